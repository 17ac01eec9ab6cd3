#pragma once

#include "clab/report.hpp"

namespace clab {

/// Documented exit codes: 0 all checks satisfied within slack, 1 input
/// error (raised as InputError by the callers), 2 flagged anomaly or
/// construction failure.
struct RunOutcome {
  int exit_code = 0;
  json report;
};

RunOutcome run_classify(const json& operator_spec, RunManifest manifest);
RunOutcome run_certify(const json& operator_spec, RunManifest manifest);
RunOutcome run_verify(const json& case_spec, RunManifest manifest);
RunOutcome run_extremize(const json& search_spec, RunManifest manifest);
RunOutcome run_lw_demo(const json& voxel_spec, RunManifest manifest);

/// Resolves a CLI operator argument: a preset name ("gradient",
/// "deformation", "cauchy_riemann", "partial_x1") or a path to a JSON spec.
json resolve_operator_argument(const std::string& arg, int preset_n);

json load_json_file(const std::string& path);

}  // namespace clab
