#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clab/extremize.hpp"
#include "clab/geometry.hpp"

namespace py = pybind11;
using namespace clab;

namespace {

SampledField field_from_array(const py::array_t<double, py::array::c_style>& values, double h,
                              bool vector_valued) {
  const int nd = static_cast<int>(values.ndim());
  const int n = vector_valued ? nd - 1 : nd;
  if (n < 1) throw InputError("field array needs at least one grid axis");
  std::vector<int> shape(n);
  for (int k = 0; k < n; ++k) shape[k] = static_cast<int>(values.shape(k));
  const int dimv = vector_valued ? static_cast<int>(values.shape(nd - 1)) : 1;
  SampledField field(n, shape, h, dimv);
  std::memcpy(field.values.data(), values.data(), field.values.size() * sizeof(double));
  field.refresh_support_flag();
  return field;
}

py::array_t<double> field_to_array(const SampledField& field) {
  std::vector<py::ssize_t> dims(field.shape.begin(), field.shape.end());
  if (field.dimV > 1) dims.push_back(field.dimV);
  py::array_t<double> out(dims);
  std::memcpy(out.mutable_data(), field.values.data(), field.values.size() * sizeof(double));
  return out;
}

py::dict report_to_dict(const VerificationReport& r) {
  py::dict out;
  out["case"] = r.case_id;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["ratio"] = r.ratio;
  out["degenerate"] = r.degenerate;
  out["anomaly"] = r.anomaly;
  out["h"] = r.h;
  out["shape"] = r.shape;
  if (r.gamma_bound > 0.0) out["gamma_bound"] = r.gamma_bound;
  return out;
}

VoxelSet voxels_from_array(const py::array_t<long, py::array::c_style>& cells, double h) {
  if (cells.ndim() != 2) throw InputError("voxel cells must be a (count, n) integer array");
  const int n = static_cast<int>(cells.shape(1));
  VoxelSet set(n, h);
  auto view = cells.unchecked<2>();
  for (py::ssize_t r = 0; r < cells.shape(0); ++r) {
    Eigen::VectorXi cell(n);
    for (int k = 0; k < n; ++k) cell[k] = static_cast<int>(view(r, k));
    set.add(cell);
  }
  return set;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "operator classification, canceling certificates and Lorentz-scale "
            "inequality verification on sampled fields";

  py::register_exception<InputError>(m, "InputError");
  py::register_exception<ConstructionError>(m, "ConstructionError");
  py::register_exception<VerificationError>(m, "VerificationError");

  py::class_<OperatorSymbol>(m, "OperatorSymbol")
      .def(py::init([](int n, int dimV, int dimE, const std::vector<Eigen::MatrixXd>& coeff) {
             return OperatorSymbol(n, dimV, dimE, coeff);
           }),
           py::arg("n"), py::arg("dimV"), py::arg("dimE"), py::arg("coeffs"))
      .def_readonly("n", &OperatorSymbol::n)
      .def_readonly("dimV", &OperatorSymbol::dimV)
      .def_readonly("dimE", &OperatorSymbol::dimE)
      .def_property_readonly("coeffs",
                             [](const OperatorSymbol& a) { return a.coeff; })
      .def("__repr__", [](const OperatorSymbol& a) {
        return "<OperatorSymbol n=" + std::to_string(a.n) + " V=" + std::to_string(a.dimV) +
               " E=" + std::to_string(a.dimE) + ">";
      });

  m.def("operator_preset", &operator_preset, py::arg("name"), py::arg("n") = 2,
        "named presets: gradient, deformation, cauchy_riemann, partial_x1");
  m.def("symbol_eval", &symbol_eval, py::arg("operator"), py::arg("xi"));

  m.def(
      "is_elliptic",
      [](const OperatorSymbol& a, int samples, double tol) {
        const auto v = is_elliptic(a, samples, tol);
        py::dict out;
        out["elliptic"] = v.elliptic;
        out["min_singular_value"] = v.min_singular_value;
        out["symbol_scale"] = v.symbol_scale;
        out["witness_xi"] = v.worst_xi;
        return out;
      },
      py::arg("operator"), py::arg("samples") = 512, py::arg("tol") = 1e-7);

  m.def(
      "is_l_canceling",
      [](const OperatorSymbol& a, int l, int max_rounds, std::uint64_t seed) {
        const auto v = is_l_canceling(a, l, max_rounds, seed);
        py::dict out;
        out["canceling"] = v.canceling;
        out["stalled"] = v.stalled;
        out["rounds_used"] = v.rounds_used;
        out["residual_dim"] = v.residual.dim();
        return out;
      },
      py::arg("operator"), py::arg("l"), py::arg("max_rounds") = 256, py::arg("seed") = 1);

  m.def(
      "span_image",
      [](const OperatorSymbol& a, const Eigen::MatrixXd& w_span) {
        return span_image(a, Subspace::from_span(w_span)).basis();
      },
      py::arg("operator"), py::arg("w_span"),
      "orthonormal basis of span{A(xi)v : xi in span(w_span), v in V}");

  py::class_<CancelingCertificate>(m, "CancelingCertificate")
      .def_readonly("m", &CancelingCertificate::m)
      .def_readonly("w", &CancelingCertificate::w)
      .def_readonly("v", &CancelingCertificate::v)
      .def_readonly("e", &CancelingCertificate::e)
      .def_readonly("xi", &CancelingCertificate::xi)
      .def_readonly("seed", &CancelingCertificate::seed)
      .def_readonly("budget", &CancelingCertificate::budget);

  m.def("construct_certificate", &construct_certificate, py::arg("operator"), py::arg("seed") = 1,
        py::arg("budget") = 256);
  m.def(
      "verify_certificate",
      [](const OperatorSymbol& a, const CancelingCertificate& c) {
        const auto r = verify_certificate(a, c);
        py::dict out;
        out["identity_residual"] = r.identity_residual;
        out["independence_margins"] = r.independence_margins;
        out["gamma_bound"] = r.gamma_bound;
        out["arrangement_reaches_zero"] = r.arrangement_reaches_zero;
        out["pass"] = r.pass();
        return out;
      },
      py::arg("operator"), py::arg("certificate"));

  m.def(
      "gamma_lower_bound",
      [](const std::vector<std::vector<Eigen::VectorXd>>& fams, int samples) {
        const auto b = gamma_lower_bound(fams, samples);
        py::dict out;
        out["value"] = b.value;
        out["arrangement_reaches_zero"] = b.arrangement_reaches_zero;
        return out;
      },
      py::arg("v_families"), py::arg("sphere_samples") = 10000);

  m.def("maximally_linearly_independent", &maximally_linearly_independent, py::arg("vectors"));

  py::class_<SampledField>(m, "SampledField")
      .def(py::init(&field_from_array), py::arg("values"), py::arg("h"),
           py::arg("vector_valued") = false,
           "grid values in C order; vector fields carry the component axis last")
      .def_readonly("n", &SampledField::n)
      .def_readonly("shape", &SampledField::shape)
      .def_readonly("h", &SampledField::h)
      .def_readonly("dimV", &SampledField::dimV)
      .def_property_readonly("values", &field_to_array)
      .def_property_readonly("compactly_supported",
                             [](const SampledField& f) { return f.support_flag; });

  m.def(
      "generate_field",
      [](const std::string& generator, int n, const std::vector<int>& shape, double h, int dimV,
         const GeneratorParams& params) {
        return generate_field(generator, n, shape, h, dimV, params);
      },
      py::arg("generator"), py::arg("n"), py::arg("shape"), py::arg("h"), py::arg("dimV") = 1,
      py::arg("params") = GeneratorParams{});

  m.def(
      "distribution",
      [](const SampledField& f) {
        const auto p = distribution(f.is_scalar() ? f : f.pointwise_norm());
        py::dict out;
        out["thresholds"] = p.thresholds;
        out["measures"] = p.measures;
        out["total_measure"] = p.total_measure;
        return out;
      },
      py::arg("field"));
  m.def("lorentz_norm", &lorentz_norm, py::arg("field"), py::arg("p"), py::arg("q"),
        "pass q = float('inf') for the weak norm");

  m.def(
      "apply_operator",
      [](const OperatorSymbol& a, const SampledField& u) {
        return field_to_array(apply_operator(a, u));
      },
      py::arg("operator"), py::arg("field"));
  m.def("directional_derivative_l1", &directional_derivative_l1, py::arg("field"), py::arg("w"),
        py::arg("v"));
  m.def("field_l1", &field_l1, py::arg("field"));

  m.def("verify_alvino", [](const SampledField& u) { return report_to_dict(verify_alvino(u)); },
        py::arg("field"));
  m.def(
      "verify_korn_sobolev",
      [](const SampledField& u) { return report_to_dict(verify_korn_sobolev(u)); },
      py::arg("field"));
  m.def(
      "verify_directional_theorem",
      [](const SampledField& u, const std::vector<std::vector<Eigen::VectorXd>>& w,
         const std::vector<std::vector<Eigen::VectorXd>>& v) {
        return report_to_dict(verify_directional_theorem(u, DirectionalFamily(w, v)));
      },
      py::arg("field"), py::arg("w"), py::arg("v"));
  m.def(
      "verify_certificate_inequality",
      [](const OperatorSymbol& a, const CancelingCertificate& cert, const SampledField& u) {
        const auto r = verify_certificate_inequality(a, cert, u);
        py::dict out = report_to_dict(r);
        out["identity_residual"] = r.identity_residual;
        out["certificate_rhs"] = r.certificate_rhs;
        return out;
      },
      py::arg("operator"), py::arg("certificate"), py::arg("field"));
  m.def(
      "planar_checks",
      [](const SampledField& u) {
        const auto r = planar_checks(u);
        py::dict out;
        out["a_holds"] = r.a_holds;
        out["a_max_violation"] = r.a_max_violation;
        out["b_lhs"] = r.b_lhs;
        out["b_rhs"] = r.b_rhs;
        out["b_slack"] = r.b_slack;
        out["b_holds"] = r.b_holds;
        out["c_lhs"] = r.c_lhs;
        out["c_rhs"] = r.c_rhs;
        out["c_slack"] = r.c_slack;
        out["c_holds"] = r.c_holds;
        out["holds"] = r.holds;
        return out;
      },
      py::arg("field"));

  py::class_<VoxelSet>(m, "VoxelSet")
      .def(py::init(&voxels_from_array), py::arg("cells"), py::arg("h"))
      .def_static("ball", &VoxelSet::ball, py::arg("n"), py::arg("h"), py::arg("radius"),
                  py::arg("center") = Eigen::VectorXd())
      .def_static("cube", &VoxelSet::cube, py::arg("n"), py::arg("h"), py::arg("side_cells"))
      .def_static("parallelepiped", &VoxelSet::parallelepiped, py::arg("n"), py::arg("h"),
                  py::arg("spanning"), py::arg("origin") = Eigen::VectorXd())
      .def_readonly("n", &VoxelSet::n)
      .def_readonly("h", &VoxelSet::h)
      .def_property_readonly("count",
                             [](const VoxelSet& k) { return k.cells.size(); })
      .def("measure", &VoxelSet::measure);

  py::class_<DirectionBasis>(m, "DirectionBasis")
      .def(py::init<std::vector<Eigen::VectorXd>>(), py::arg("unit_vectors"))
      .def_property_readonly("abs_det", &DirectionBasis::abs_det);

  m.def("shadow_measure", &shadow_measure, py::arg("voxels"), py::arg("w"), py::arg("raster_h"));
  m.def(
      "loomis_whitney_check",
      [](const VoxelSet& k, const DirectionBasis& basis, double raster_h) {
        const auto r = loomis_whitney_check(k, basis, raster_h);
        py::dict out;
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        out["ratio"] = r.ratio;
        out["tolerance"] = r.tolerance;
        out["holds"] = r.holds;
        out["boundary_voxels"] = r.boundary_voxels;
        return out;
      },
      py::arg("voxels"), py::arg("basis"), py::arg("raster_h"));
  m.def("gram_jacobian", &gram_jacobian, py::arg("basis"), py::arg("i"));
  m.def(
      "gagliardo_product_bound",
      [](const std::vector<SampledField>& factors) {
        const auto r = gagliardo_product_bound(factors);
        py::dict out;
        out["integral"] = r.integral;
        out["bound"] = r.bound;
        out["holds"] = r.holds;
        out["used_absolute_values"] = r.used_absolute_values;
        return out;
      },
      py::arg("factors"));

  m.attr("__version__") = "0.1.0";
}
