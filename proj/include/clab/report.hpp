#pragma once

#include <filesystem>

#include "clab/json_io.hpp"

namespace clab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Run provenance embedded verbatim in every emitted report. The timestamp
/// is excluded from the content hash so identical runs hash identically.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  int budget = 256;
  std::string output_dir;
  std::string tool_version = kToolVersion;
  std::string timestamp;

  json to_json() const;
};

/// 64-bit FNV-1a of the serialized report with the volatile fields
/// (manifest.timestamp, content_hash) removed.
std::string content_hash(const json& report);

/// Standard summary line (case,lhs,rhs,ratio,h,cells,seed).
std::string summary_csv_header();
std::string summary_csv_row(const VerificationReport& report);

/// JSON-round-trip formatting of a double (shortest exact representation).
std::string format_double(double v);

/// Writes report.json (manifest + results + content hash) and summary.csv
/// (header line plus rows) into the manifest's output directory. Returns
/// the full report JSON as written.
json write_outputs(const RunManifest& manifest, const json& results,
                   const std::vector<std::string>& csv_lines);

}  // namespace clab
