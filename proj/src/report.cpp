#include "clab/report.hpp"

#include <fstream>
#include <sstream>

namespace clab {

json RunManifest::to_json() const {
  return json{{"command", command},   {"inputs", inputs},
              {"seed", seed},         {"budget", budget},
              {"output_dir", output_dir}, {"tool_version", tool_version},
              {"timestamp", timestamp}};
}

std::string content_hash(const json& report) {
  json stripped = report;
  stripped.erase("content_hash");
  if (stripped.contains("manifest")) stripped["manifest"].erase("timestamp");
  const std::string text = stripped.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << h;
  return out.str();
}

std::string format_double(double v) {
  json j = v;
  return j.dump();
}

std::string summary_csv_header() { return "case,lhs,rhs,ratio,h,cells,seed"; }

std::string summary_csv_row(const VerificationReport& report) {
  std::size_t cells = report.shape.empty() ? 0 : 1;
  for (int e : report.shape) cells *= static_cast<std::size_t>(e);
  const std::string ratio = report.degenerate ? "degenerate"
                            : report.anomaly ? "anomaly"
                                             : format_double(report.ratio);
  std::ostringstream out;
  out << report.case_id << "," << format_double(report.lhs) << "," << format_double(report.rhs)
      << "," << ratio << "," << format_double(report.h) << "," << cells << "," << report.seed;
  return out.str();
}

json write_outputs(const RunManifest& manifest, const json& results,
                   const std::vector<std::string>& csv_lines) {
  namespace fs = std::filesystem;
  const fs::path dir = manifest.output_dir.empty() ? fs::path(".") : fs::path(manifest.output_dir);
  fs::create_directories(dir);

  json report{{"manifest", manifest.to_json()}, {"results", results}};
  report["content_hash"] = content_hash(report);
  std::ofstream jf(dir / "report.json");
  jf << report.dump(2) << "\n";

  std::ofstream cf(dir / "summary.csv");
  for (const auto& line : csv_lines) cf << line << "\n";
  return report;
}

}  // namespace clab
