#include "clab/runner.hpp"

#include <fstream>

namespace clab {

namespace {

json elliptic_to_json(const EllipticityVerdict& v) {
  json out{{"elliptic", v.elliptic},
           {"min_singular_value", v.min_singular_value},
           {"symbol_scale", v.symbol_scale},
           {"samples", v.samples},
           {"refine_steps", v.refine_steps}};
  if (!v.elliptic) {
    json witness = json::array();
    for (int i = 0; i < v.worst_xi.size(); ++i) witness.push_back(v.worst_xi[i]);
    out["witness_xi"] = witness;
  }
  return out;
}

json canceling_to_json(const CancelingVerdict& v) {
  return json{{"canceling", v.canceling},
              {"stalled", v.stalled},
              {"rounds_used", v.rounds_used},
              {"witnesses", v.witnesses.size()},
              {"residual_dim", v.residual.dim()}};
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw InputError("malformed JSON in " + path + ": " + err.what());
  }
}

json resolve_operator_argument(const std::string& arg, int preset_n) {
  if (arg == "gradient" || arg == "deformation" || arg == "cauchy_riemann" ||
      arg == "partial_x1")
    return json{{"preset", arg}, {"n", arg == "cauchy_riemann" ? 2 : preset_n}};
  return load_json_file(arg);
}

RunOutcome run_classify(const json& operator_spec, RunManifest manifest) {
  const OperatorSymbol op = parse_operator(operator_spec);
  const auto elliptic = is_elliptic(op);

  json canceling = json::object();
  std::vector<std::string> csv{summary_csv_header()};
  for (int l = 0; l <= op.n; ++l) {
    const auto verdict = is_l_canceling(op, l, 256, manifest.seed);
    canceling[std::to_string(l)] = canceling_to_json(verdict);
    VerificationReport row;
    row.case_id = "canceling_l" + std::to_string(l);
    row.lhs = verdict.residual.dim();
    row.rhs = op.dimE;
    row.ratio = op.dimE > 0 ? row.lhs / row.rhs : 0.0;
    row.seed = manifest.seed;
    csv.push_back(summary_csv_row(row));
  }
  VerificationReport erow;
  erow.case_id = "elliptic";
  erow.lhs = elliptic.min_singular_value;
  erow.rhs = elliptic.symbol_scale;
  erow.ratio = elliptic.symbol_scale > 0 ? erow.lhs / erow.rhs : 0.0;
  erow.seed = manifest.seed;
  csv.insert(csv.begin() + 1, summary_csv_row(erow));

  json results{{"operator", operator_to_json(op)},
               {"elliptic", elliptic_to_json(elliptic)},
               {"canceling", std::move(canceling)}};
  RunOutcome outcome;
  outcome.report = write_outputs(manifest, results, csv);
  return outcome;
}

RunOutcome run_certify(const json& operator_spec, RunManifest manifest) {
  const OperatorSymbol op = parse_operator(operator_spec);
  RunOutcome outcome;
  std::vector<std::string> csv{summary_csv_header()};
  try {
    const auto cert = construct_certificate(op, manifest.seed, manifest.budget);
    const auto report = verify_certificate(op, cert);
    const json jcert = certificate_to_json(op, cert, report);

    namespace fs = std::filesystem;
    const fs::path dir = manifest.output_dir.empty() ? "." : manifest.output_dir;
    fs::create_directories(dir);
    std::ofstream cf(dir / "certificate.json");
    cf << jcert.dump(2) << "\n";

    VerificationReport row;
    row.case_id = "certificate_m" + std::to_string(cert.m);
    row.lhs = report.identity_residual;
    row.rhs = report.identity_tol;
    row.ratio = report.identity_residual / report.identity_tol;
    row.seed = manifest.seed;
    csv.push_back(summary_csv_row(row));

    json results{{"certificate", jcert}, {"pass", report.pass()}};
    outcome.report = write_outputs(manifest, results, csv);
    outcome.exit_code = report.pass() ? 0 : 2;
  } catch (const ConstructionError& err) {
    json results{{"construction_failed", true},
                 {"diagnostic", err.what()},
                 {"stuck_step", err.stuck_step()}};
    outcome.report = write_outputs(manifest, results, csv);
    outcome.exit_code = 2;
  }
  return outcome;
}

namespace {

// runs one case of a verify bundle, appending rows; returns worst exit code
int run_one_case(const json& spec, const RunManifest& manifest, json& results,
                 std::vector<std::string>& csv) {
  if (!spec.contains("check")) throw InputError("verify case needs a \"check\" kind");
  const std::string check = spec["check"].get<std::string>();
  if (!spec.contains("field")) throw InputError("verify case needs a field spec");
  SampledField field = parse_field(spec["field"]);
  field.refresh_support_flag();

  const auto push = [&](VerificationReport report) {
    report.seed = manifest.seed;
    results.push_back(verification_to_json(report));
    csv.push_back(summary_csv_row(report));
    return report.anomaly ? 2 : 0;
  };

  if (check == "alvino") return push(verify_alvino(field));
  if (check == "korn") return push(verify_korn_sobolev(field));
  if (check == "directional") {
    if (!spec.contains("family")) throw InputError("directional case needs a family");
    return push(verify_directional_theorem(field, parse_family(spec["family"])));
  }
  if (check == "certificate") {
    if (!spec.contains("operator")) throw InputError("certificate case needs an operator");
    const OperatorSymbol op = parse_operator(spec["operator"]);
    CancelingCertificate cert;
    if (spec.contains("certificate"))
      cert = parse_certificate(spec["certificate"]);
    else
      cert = construct_certificate(op, manifest.seed, manifest.budget);
    try {
      auto report = verify_certificate_inequality(op, cert, field);
      const int code = push(report);
      results.back()["identity_residual"] = report.identity_residual;
      results.back()["certificate_rhs"] = report.certificate_rhs;
      return code;
    } catch (const VerificationError& err) {
      results.push_back(json{{"case", "certificate"}, {"error", err.what()}});
      return 2;
    }
  }
  if (check == "planar") {
    const auto report = planar_checks(field);
    json jr{{"case", "planar"},
            {"a_max_violation", report.a_max_violation},
            {"a_holds", report.a_holds},
            {"b_lhs", report.b_lhs},
            {"b_rhs", report.b_rhs},
            {"b_slack", report.b_slack},
            {"b_holds", report.b_holds},
            {"c_lhs", report.c_lhs},
            {"c_rhs", report.c_rhs},
            {"c_slack", report.c_slack},
            {"c_holds", report.c_holds},
            {"holds", report.holds}};
    results.push_back(std::move(jr));
    VerificationReport row;
    row.case_id = "planar_b";
    row.lhs = report.b_lhs;
    row.rhs = report.b_rhs;
    row.h = field.h;
    row.shape = field.shape;
    row.seed = manifest.seed;
    row.finish();
    csv.push_back(summary_csv_row(row));
    return report.holds ? 0 : 2;
  }
  if (check == "hardy") {
    const double grad_l1 = field_l1(apply_operator(gradient_operator(field.n), field));
    const auto report = lorentz_holder_hardy(field, grad_l1);
    results.push_back(json{{"case", "hardy"},
                           {"integral", report.integral},
                           {"grad_l1", report.grad_l1},
                           {"lorentz_lhs", report.lorentz_lhs},
                           {"ratio_vs_grad", report.ratio_vs_grad},
                           {"ratio_vs_lorentz", report.ratio_vs_lorentz}});
    VerificationReport row;
    row.case_id = "hardy";
    row.lhs = report.integral;
    row.rhs = report.grad_l1;
    row.h = field.h;
    row.shape = field.shape;
    row.seed = manifest.seed;
    row.finish();
    csv.push_back(summary_csv_row(row));
    return 0;
  }
  throw InputError("unknown verify check: " + check);
}

}  // namespace

RunOutcome run_verify(const json& case_spec, RunManifest manifest) {
  json results = json::array();
  std::vector<std::string> csv{summary_csv_header()};
  int exit_code = 0;
  if (case_spec.contains("cases")) {
    for (const auto& one : case_spec["cases"])
      exit_code = std::max(exit_code, run_one_case(one, manifest, results, csv));
  } else {
    exit_code = run_one_case(case_spec, manifest, results, csv);
  }
  RunOutcome outcome;
  outcome.report = write_outputs(manifest, results, csv);
  outcome.exit_code = exit_code;
  return outcome;
}

RunOutcome run_extremize(const json& search_spec, RunManifest manifest) {
  if (!search_spec.contains("problem")) throw InputError("search spec needs a problem");
  const std::string problem = search_spec["problem"].get<std::string>();
  ExtremizeProblem kind;
  if (problem == "alvino")
    kind = ExtremizeProblem::alvino;
  else if (problem == "korn")
    kind = ExtremizeProblem::korn;
  else if (problem == "certificate")
    kind = ExtremizeProblem::certificate;
  else
    throw InputError("unknown extremize problem: " + problem);

  if (!search_spec.contains("template")) throw InputError("search spec needs a field template");
  const auto& jt = search_spec["template"];
  FieldTemplate tmpl;
  tmpl.generator = jt.value("generator", "gaussian_bump");
  tmpl.n = jt.value("n", 2);
  tmpl.shape = jt["shape"].get<std::vector<int>>();
  tmpl.h = jt["h"].get<double>();
  tmpl.dimV = jt.value("dimV", 1);
  if (jt.contains("params"))
    for (const auto& [key, value] : jt["params"].items()) tmpl.base[key] = value.get<double>();

  if (!search_spec.contains("space")) throw InputError("search spec needs a parameter space");
  ParameterBox box;
  const auto& jspace = search_spec["space"];
  box.lo.resize(jspace.size());
  box.hi.resize(jspace.size());
  for (std::size_t i = 0; i < jspace.size(); ++i) {
    box.names.push_back(jspace[i]["name"].get<std::string>());
    box.lo[static_cast<int>(i)] = jspace[i]["lo"].get<double>();
    box.hi[static_cast<int>(i)] = jspace[i]["hi"].get<double>();
  }

  OperatorSymbol op;
  CancelingCertificate cert;
  const OperatorSymbol* op_ptr = nullptr;
  const CancelingCertificate* cert_ptr = nullptr;
  if (kind == ExtremizeProblem::certificate) {
    if (!search_spec.contains("operator"))
      throw InputError("certificate searches need an operator");
    op = parse_operator(search_spec["operator"]);
    cert = search_spec.contains("certificate")
               ? parse_certificate(search_spec["certificate"])
               : construct_certificate(op, manifest.seed, manifest.budget);
    op_ptr = &op;
    cert_ptr = &cert;
  }

  const int budget = search_spec.value("budget", manifest.budget);
  const auto result =
      extremizer_search(kind, op_ptr, cert_ptr, tmpl, box, budget, manifest.seed);

  auto best = result.best;
  best.case_id = problem + "_best";
  auto refined = result.refined;
  refined.case_id = problem + "_refined_2x";
  json results{{"problem", problem},
               {"evaluations", result.evaluations},
               {"best_params", result.best_params},
               {"best", verification_to_json(best)},
               {"refined", verification_to_json(refined)}};
  std::vector<std::string> csv{summary_csv_header(), summary_csv_row(best),
                               summary_csv_row(refined)};
  RunOutcome outcome;
  outcome.report = write_outputs(manifest, results, csv);
  outcome.exit_code = (best.anomaly || refined.anomaly) ? 2 : 0;
  return outcome;
}

RunOutcome run_lw_demo(const json& voxel_spec, RunManifest manifest) {
  const VoxelSet k = parse_voxels(voxel_spec);
  const double raster_h = voxel_spec.value("raster_h", k.h / 2.0);

  std::vector<DirectionBasis> bases;
  std::vector<std::string> labels;
  if (voxel_spec.contains("basis")) {
    std::vector<Eigen::VectorXd> dirs;
    for (const auto& jv : voxel_spec["basis"]) {
      Eigen::VectorXd v(jv.size());
      for (std::size_t i = 0; i < jv.size(); ++i) v[static_cast<int>(i)] = jv[i].get<double>();
      dirs.push_back(v.normalized());
    }
    bases.emplace_back(dirs);
    labels.push_back("given_basis");
  } else {
    std::vector<Eigen::VectorXd> canonical;
    for (int i = 0; i < k.n; ++i) canonical.push_back(Eigen::VectorXd::Unit(k.n, i));
    bases.emplace_back(canonical);
    labels.push_back("canonical");
    // one tilted companion basis keeps the demo nonorthogonal
    std::vector<Eigen::VectorXd> tilted = canonical;
    tilted[1] = (canonical[0] + canonical[1]).normalized();
    bases.emplace_back(tilted);
    labels.push_back("tilted");
  }

  json results = json::array();
  std::vector<std::string> csv{"case,lhs,rhs,ratio,tolerance"};
  int exit_code = 0;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto report = loomis_whitney_check(k, bases[b], raster_h);
    json jr{{"case", labels[b]},
            {"lhs", report.lhs},
            {"rhs", report.rhs},
            {"ratio", report.ratio},
            {"raster_tolerance", report.raster_tolerance},
            {"voxel_tolerance", report.voxel_tolerance},
            {"tolerance", report.tolerance},
            {"boundary_voxels", report.boundary_voxels},
            {"holds", report.holds}};
    json jshadows = json::array();
    std::vector<double> jacobians;
    for (int i = 0; i < k.n; ++i) {
      jshadows.push_back(json{{"measure", report.shadows[i].measure},
                              {"covered_cells", report.shadows[i].covered_cells},
                              {"boundary_cells", report.shadows[i].boundary_cells}});
      jacobians.push_back(gram_jacobian(bases[b], i));
    }
    jr["shadows"] = std::move(jshadows);
    jr["gram_jacobians"] = jacobians;
    results.push_back(std::move(jr));
    csv.push_back(labels[b] + "," + format_double(report.lhs) + "," + format_double(report.rhs) +
                  "," + format_double(report.ratio) + "," + format_double(report.tolerance));
    if (!report.holds) exit_code = 2;
  }
  RunOutcome outcome;
  outcome.report = write_outputs(manifest, results, csv);
  outcome.exit_code = exit_code;
  return outcome;
}

}  // namespace clab
