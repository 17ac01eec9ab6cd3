// cancelab: classify first-order constant-coefficient operators, build and
// verify certificate families, and check the Lorentz-scale inequalities on
// sampled fields and voxel sets.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "clab/runner.hpp"

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

constexpr const char* kSchemaHelp = R"(input schemas
  operator.json   { "n": int, "dimV": int, "dimE": int,
                    "coeffs": [[[real]]] }            index order [k][e][v]
                  or { "preset": "gradient"|"deformation"|"cauchy_riemann"
                       |"partial_x1", "n": int }
                  presets may be passed directly as the argument.
  field spec      { "n": int, "shape": [int], "h": real,
                    "kind": "scalar"|"vector", "dimV": int,
                    "generator": { "name": ..., <params> } }
                  or with "raw": base64 little-endian 64-bit floats.
                  generators: gaussian_bump(sigma, amplitude, dir1..),
                    mollified_ball_indicator(radius, width, dir1..),
                    anisotropic_gaussian(sigma1.., amplitude, dir1..),
                    rigid_motion_windowed(radius, width)
  case.json       { "check": "alvino"|"korn"|"directional"|"certificate"
                    |"planar"|"hardy", "field": <field spec>,
                    "family": { "w": [[[real]]], "v": [[[real]]] }
                             | { "de_figueiredo": { "w": [[real]],
                                                    "v": [[real]] } },
                    "operator": <operator>, "certificate": <certificate> }
                  or { "cases": [ <case>, ... ] }
  search.json     { "problem": "alvino"|"korn"|"certificate",
                    "template": { "generator", "n", "shape", "h", "dimV",
                                  "params": {...} },
                    "space": [ { "name": str, "lo": real, "hi": real } ],
                    "budget": int, "operator": <operator> }
  voxel.json      { "n": int, "h": real, "cells": [[int]] }
                  or { "n", "h", "generator": { "name": "ball"|"cube"
                       |"parallelepiped", ... } };
                  optional "basis": [[real]], "raster_h": real

outputs: <out>/report.json (manifest + results + content hash) and
<out>/summary.csv (case,lhs,rhs,ratio,h,cells,seed; lw-demo writes
case,lhs,rhs,ratio,tolerance). certify also writes certificate.json.

exit codes: 0 all checks satisfied within slack, 1 input error,
2 flagged anomaly or construction failure.

CANCELING_LAB_THREADS caps worker parallelism (default: small).
)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canceling-operator laboratory"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);

  std::string input;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int budget = 256;
  int preset_n = 2;

  const auto add_common = [&](CLI::App* cmd, const char* input_help) {
    cmd->add_option("input", input, input_help)->required();
    cmd->add_option("-o,--out", out_dir, "output directory (default: .)");
    cmd->add_option("--seed", seed, "RNG seed recorded in the manifest");
    cmd->add_option("--budget", budget, "search/sample budget");
    return cmd;
  };

  auto* classify = add_common(app.add_subcommand("classify", "ellipticity and l-cancellation"),
                              "operator preset name or operator.json");
  classify->add_option("--n", preset_n, "dimension for preset operators (default 2)");
  auto* certify = add_common(app.add_subcommand("certify", "construct and verify a certificate"),
                             "operator preset name or operator.json");
  certify->add_option("--n", preset_n, "dimension for preset operators (default 2)");
  add_common(app.add_subcommand("verify", "run inequality checks from a case bundle"),
             "case.json");
  add_common(app.add_subcommand("extremize", "near-extremizer search over generator params"),
             "search.json");
  add_common(app.add_subcommand("lw-demo", "Loomis-Whitney shadows on a voxel set"),
             "voxel.json");

  CLI11_PARSE(app, argc, argv);

  clab::RunManifest manifest;
  manifest.inputs = {input};
  manifest.seed = seed;
  manifest.budget = budget;
  manifest.output_dir = out_dir;
  manifest.timestamp = utc_timestamp();

  try {
    clab::RunOutcome outcome;
    if (app.got_subcommand("classify")) {
      manifest.command = "classify";
      outcome = clab::run_classify(clab::resolve_operator_argument(input, preset_n), manifest);
    } else if (app.got_subcommand("certify")) {
      manifest.command = "certify";
      outcome = clab::run_certify(clab::resolve_operator_argument(input, preset_n), manifest);
    } else if (app.got_subcommand("verify")) {
      manifest.command = "verify";
      outcome = clab::run_verify(clab::load_json_file(input), manifest);
    } else if (app.got_subcommand("extremize")) {
      manifest.command = "extremize";
      outcome = clab::run_extremize(clab::load_json_file(input), manifest);
    } else if (app.got_subcommand("lw-demo")) {
      manifest.command = "lw-demo";
      outcome = clab::run_lw_demo(clab::load_json_file(input), manifest);
    }
    std::cout << outcome.report.dump(2) << std::endl;
    return outcome.exit_code;
  } catch (const clab::InputError& err) {
    std::cerr << "input error: " << err.what() << std::endl;
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return 1;
  }
}
