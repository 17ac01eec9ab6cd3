#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string g_binary;
std::filesystem::path g_work;

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("classify: preset gallery verdicts and exit codes") {
  const auto out = g_work / "classify_gradient";
  REQUIRE(run("classify gradient -o " + out.string()) == 0);
  const auto report = read_json(out / "report.json");
  CHECK(report["results"]["elliptic"]["elliptic"].get<bool>());
  CHECK(report["results"]["canceling"]["1"]["canceling"].get<bool>());
  CHECK(report["manifest"]["command"] == "classify");
  CHECK(report.contains("content_hash"));

  const auto cr = g_work / "classify_cr";
  REQUIRE(run("classify cauchy_riemann -o " + cr.string()) == 0);
  const auto cr_report = read_json(cr / "report.json");
  CHECK(cr_report["results"]["elliptic"]["elliptic"].get<bool>());
  CHECK_FALSE(cr_report["results"]["canceling"]["1"]["canceling"].get<bool>());
  CHECK(cr_report["results"]["canceling"]["1"]["residual_dim"] == 2);

  const auto p1 = g_work / "classify_p1";
  REQUIRE(run("classify partial_x1 -o " + p1.string()) == 0);
  const auto p1_report = read_json(p1 / "report.json");
  CHECK_FALSE(p1_report["results"]["elliptic"]["elliptic"].get<bool>());
  CHECK(p1_report["results"]["elliptic"].contains("witness_xi"));
}

TEST_CASE("certify: gradient succeeds, cauchy_riemann diagnoses failure") {
  const auto out = g_work / "certify_gradient";
  REQUIRE(run("certify gradient -o " + out.string()) == 0);
  const auto cert = read_json(out / "certificate.json");
  CHECK(cert["m"] == 1);
  CHECK(cert["report"]["pass"].get<bool>());
  CHECK(cert["seed"] == 1);

  const auto cr = g_work / "certify_cr";
  CHECK(run("certify cauchy_riemann -o " + cr.string()) == 2);
  const auto report = read_json(cr / "report.json");
  CHECK(report["results"]["construction_failed"].get<bool>());
}

TEST_CASE("verify: degenerate zero-field rows exit 0") {
  const auto out = g_work / "verify_zero";
  // a ball of invisible radius generates the zero field
  write_text(g_work / "zero_case.json", R"({
    "cases": [
      { "check": "alvino",
        "field": { "n": 2, "shape": [32, 32], "h": 0.1, "kind": "scalar",
                   "generator": { "name": "mollified_ball_indicator", "radius": 1e-9 } } },
      { "check": "korn",
        "field": { "n": 2, "shape": [32, 32], "h": 0.1, "kind": "vector", "dimV": 2,
                   "generator": { "name": "mollified_ball_indicator", "radius": 1e-9 } } }
    ]})");
  REQUIRE(run("verify " + (g_work / "zero_case.json").string() + " -o " + out.string()) == 0);
  const auto report = read_json(out / "report.json");
  for (const auto& row : report["results"]) CHECK(row["ratio"] == "degenerate");

  std::ifstream csv(out / "summary.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "case,lhs,rhs,ratio,h,cells,seed");
}

TEST_CASE("verify: a real case bundle holds") {
  const auto out = g_work / "verify_bundle";
  write_text(g_work / "bundle.json", R"({
    "cases": [
      { "check": "alvino",
        "field": { "n": 2, "shape": [64, 64], "h": 0.125, "kind": "scalar",
                   "generator": { "name": "gaussian_bump", "sigma": 0.8 } } },
      { "check": "directional",
        "field": { "n": 2, "shape": [64, 64], "h": 0.125, "kind": "scalar",
                   "generator": { "name": "gaussian_bump", "sigma": 0.8 } },
        "family": { "w": [[[1,0],[0,1]]], "v": [[[1],[1]]] } },
      { "check": "planar",
        "field": { "n": 2, "shape": [64, 64], "h": 0.125, "kind": "vector", "dimV": 2,
                   "generator": { "name": "gaussian_bump", "sigma": 0.8 } } },
      { "check": "certificate", "operator": { "preset": "gradient", "n": 2 },
        "field": { "n": 2, "shape": [64, 64], "h": 0.125, "kind": "scalar",
                   "generator": { "name": "gaussian_bump", "sigma": 0.8 } } },
      { "check": "hardy",
        "field": { "n": 2, "shape": [64, 64], "h": 0.125, "kind": "scalar",
                   "generator": { "name": "gaussian_bump", "sigma": 0.8 } } }
    ]})");
  REQUIRE(run("verify " + (g_work / "bundle.json").string() + " -o " + out.string()) == 0);
  const auto report = read_json(out / "report.json");
  CHECK(report["results"].size() == 5);
  // alvino and the gradient certificate route agree bit for bit
  CHECK(report["results"][0]["lhs"] == report["results"][3]["lhs"]);
  CHECK(report["results"][0]["rhs"] == report["results"][3]["rhs"]);
}

TEST_CASE("lw-demo: cube ratios") {
  const auto out = g_work / "lw_cube";
  write_text(g_work / "cube.json", R"({
    "n": 2, "h": 0.25,
    "generator": { "name": "cube", "side_cells": 4 }})");
  REQUIRE(run("lw-demo " + (g_work / "cube.json").string() + " -o " + out.string()) == 0);
  const auto report = read_json(out / "report.json");
  CHECK(report["results"][0]["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report["results"][0]["holds"].get<bool>());
  std::ifstream csv(out / "summary.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "case,lhs,rhs,ratio,tolerance");
}

TEST_CASE("extremize: alvino search over widths") {
  const auto out = g_work / "extremize_alvino";
  write_text(g_work / "search.json", R"({
    "problem": "alvino",
    "template": { "generator": "mollified_ball_indicator", "n": 2,
                  "shape": [64, 64], "h": 0.0625, "dimV": 1,
                  "params": { "radius": 1.0 } },
    "space": [ { "name": "width", "lo": 0.15, "hi": 0.8 } ],
    "budget": 20 })");
  REQUIRE(run("extremize " + (g_work / "search.json").string() + " -o " + out.string()) == 0);
  const auto report = read_json(out / "report.json");
  CHECK(report["results"]["best"]["ratio"].get<double>() > 0.5);
  CHECK(report["results"]["refined"]["shape"][0] == 128);
}

TEST_CASE("reproducibility: identical manifests give byte-identical reports") {
  const auto out = g_work / "repro";
  const std::string cmd = "verify " + (g_work / "bundle.json").string() + " -o " + out.string() +
                          " --seed 7 --budget 64";
  REQUIRE(run(cmd) == 0);
  auto first = read_json(out / "report.json");
  std::ifstream csv1(out / "summary.csv");
  std::string csv_first((std::istreambuf_iterator<char>(csv1)), {});

  REQUIRE(run(cmd) == 0);
  auto second = read_json(out / "report.json");
  std::ifstream csv2(out / "summary.csv");
  std::string csv_second((std::istreambuf_iterator<char>(csv2)), {});

  CHECK(first["content_hash"] == second["content_hash"]);
  first["manifest"].erase("timestamp");
  second["manifest"].erase("timestamp");
  CHECK(first.dump() == second.dump());
  CHECK(csv_first == csv_second);
}

TEST_CASE("input errors exit 1 with diagnostics") {
  write_text(g_work / "broken.json", "{ not json");
  CHECK(run("verify " + (g_work / "broken.json").string() + " -o " + (g_work / "b").string()) ==
        1);
  CHECK(run("classify no_such_preset.json -o " + (g_work / "b2").string()) == 1);
  write_text(g_work / "badcase.json", R"({ "check": "unknown", "field": {} })");
  CHECK(run("verify " + (g_work / "badcase.json").string() + " -o " + (g_work / "b3").string()) ==
        1);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cancelab> [doctest args]\n");
    return 1;
  }
  g_binary = argv[1];
  g_work = std::filesystem::temp_directory_path() / "cancelab_cli_tests";
  std::filesystem::remove_all(g_work);
  std::filesystem::create_directories(g_work);

  doctest::Context context;
  context.applyCommandLine(argc - 1, argv + 1);
  return context.run();
}
