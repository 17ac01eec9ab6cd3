#include <doctest.h>

#include <cmath>

#include "clab/certificate.hpp"

using namespace clab;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

OperatorSymbol zero_operator(int n, int dimV, int dimE) {
  return OperatorSymbol(n, dimV, dimE,
                        std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(dimE, dimV)));
}

}  // namespace

TEST_CASE("symbol_eval on the preset gallery") {
  const auto grad = gradient_operator(2);
  const Eigen::MatrixXd g = symbol_eval(grad, vec2(1, 0));
  CHECK(g(0, 0) == 1.0);  // v -> (v, 0)
  CHECK(g(1, 0) == 0.0);

  CHECK(symbol_eval(grad, vec2(0, 0)).norm() == 0.0);

  const Eigen::MatrixXd cr = symbol_eval(cauchy_riemann_operator(), vec2(0, 1));
  Eigen::MatrixXd expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK((cr - expect).norm() == 0.0);

  CHECK_THROWS_AS(symbol_eval(grad, vec3(1, 0, 0)), InputError);
}

TEST_CASE("symbol_eval is exactly linear on dyadic inputs") {
  Rng rng(11);
  // dyadic rationals keep every product and sum exact in double precision
  const auto dyadic = [&](int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i)
      v[i] = static_cast<double>(static_cast<int>(rng.next_u64() % 33) - 16) / 8.0;
    return v;
  };
  std::vector<Eigen::MatrixXd> coeff(3);
  for (auto& m : coeff) {
    m = Eigen::MatrixXd(4, 2);
    for (int r = 0; r < 4; ++r) m.row(r) = dyadic(2).transpose();
  }
  const OperatorSymbol op(3, 2, 4, coeff);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd xi = dyadic(3), eta = dyadic(3);
    const double alpha = 0.5, beta = -2.0;
    const Eigen::MatrixXd lhs = symbol_eval(op, alpha * xi + beta * eta);
    const Eigen::MatrixXd rhs = alpha * symbol_eval(op, xi) + beta * symbol_eval(op, eta);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
  }

  // irrational coefficients (deformation) still satisfy linearity to roundoff
  const auto def = deformation_operator(3);
  for (int trial = 0; trial < 50; ++trial) {
    Rng local(trial + 1);
    const Eigen::VectorXd xi = local.normal_vector(3), eta = local.normal_vector(3);
    const Eigen::MatrixXd lhs = symbol_eval(def, 0.3 * xi + 1.7 * eta);
    const Eigen::MatrixXd rhs = 0.3 * symbol_eval(def, xi) + 1.7 * symbol_eval(def, eta);
    const double scale = std::max(1.0, rhs.norm());
    CHECK((lhs - rhs).norm() / scale < 1e-12);
  }
}

TEST_CASE("is_elliptic: gradient, partial_x1 and deformation") {
  for (int n : {2, 3}) {
    const auto verdict = is_elliptic(gradient_operator(n));
    CHECK(verdict.elliptic);
    CHECK(verdict.min_singular_value == doctest::Approx(1.0).epsilon(1e-9));
  }

  const auto bad = is_elliptic(partial_x1_operator(2));
  CHECK_FALSE(bad.elliptic);
  CHECK(bad.min_singular_value < 1e-8);
  CHECK(std::abs(bad.worst_xi[1]) == doctest::Approx(1.0).epsilon(1e-6));

  // oracle: minimize the smallest singular value over a dense circle grid
  const auto def = deformation_operator(2);
  double oracle = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) {
    const double theta = 2.0 * M_PI * k / 10000.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        symbol_eval(def, vec2(std::cos(theta), std::sin(theta))));
    oracle = std::min(oracle, svd.singularValues().minCoeff());
  }
  const auto verdict = is_elliptic(def);
  CHECK(verdict.elliptic);
  CHECK(verdict.min_singular_value == doctest::Approx(oracle).epsilon(1e-6));
  // the analytic value for the isometric embedding of Sym(2)
  CHECK(oracle == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("span_image on lines and the zero subspace") {
  const auto grad = gradient_operator(2);
  const Subspace e1 = Subspace::from_span(vec2(1, 0));
  const Subspace img = span_image(grad, e1);
  CHECK(img.dim() == 1);
  CHECK(img.distance(vec2(1, 0)) < 1e-12);

  const Subspace all = span_image(cauchy_riemann_operator(), e1);
  CHECK(all.dim() == 2);

  CHECK(span_image(grad, Subspace::zero(2)).is_zero());
}

TEST_CASE("is_l_canceling: gallery verdicts") {
  const auto grad2 = gradient_operator(2);
  CHECK(is_l_canceling(grad2, 1, 64, 3).canceling);

  const auto cr = is_l_canceling(cauchy_riemann_operator(), 1, 64, 3);
  CHECK_FALSE(cr.canceling);
  CHECK(cr.stalled);
  CHECK(cr.residual.dim() == 2);  // residual is all of E

  CHECK(is_l_canceling(zero_operator(2, 1, 1), 2).canceling);
  CHECK_FALSE(is_l_canceling(grad2, 2).canceling);

  for (const auto& op : {grad2, cauchy_riemann_operator(), deformation_operator(3)})
    CHECK(is_l_canceling(op, 0).canceling);

  const auto def3 = is_l_canceling(deformation_operator(3), 2, 128, 5);
  CHECK(def3.canceling);
}

TEST_CASE("is_l_canceling monotonicity via witness reuse") {
  // span over a subspace of W is contained in the span over W, so reusing
  // shrunken witnesses at l' < l can only give smaller intersections
  const auto grad3 = gradient_operator(3);
  const auto at2 = is_l_canceling(grad3, 2, 64, 9);
  REQUIRE(at2.canceling);
  REQUIRE(!at2.witnesses.empty());

  std::vector<Subspace> lines;
  for (const auto& w : at2.witnesses)
    for (int c = 0; c < w.dim(); ++c) lines.push_back(Subspace::from_span(w.basis().col(c)));

  // nested spans property
  for (const auto& w : at2.witnesses)
    for (int c = 0; c < w.dim(); ++c) {
      const Subspace sub = Subspace::from_span(w.basis().col(c));
      CHECK(span_image(grad3, w).contains(span_image(grad3, sub)));
    }

  Subspace reused = Subspace::full(grad3.dimE);
  Subspace original = Subspace::full(grad3.dimE);
  for (const auto& w : at2.witnesses) original = original.intersect(span_image(grad3, w));
  for (const auto& line : lines) reused = reused.intersect(span_image(grad3, line));
  CHECK(reused.dim() <= original.dim());

  const auto at1 = is_l_canceling(grad3, 1, 64, 9, lines);
  CHECK(at1.canceling);
}

TEST_CASE("arrangement_intersect_union and pick_nonzero") {
  const auto full2 = SubspaceArrangement::full(2);
  const auto cut = arrangement_intersect_union(full2, {vec2(1, 0)});
  REQUIRE(cut.components.size() == 1);
  CHECK(cut.components[0].dim() == 1);
  CHECK(cut.components[0].distance(vec2(0, 1)) < 1e-12);

  const auto dead = arrangement_intersect_union(cut, {vec2(0, 1)});
  CHECK(dead.is_zero());
  CHECK_FALSE(pick_nonzero(dead).has_value());

  const auto planes =
      arrangement_intersect_union(SubspaceArrangement::full(3), {vec3(1, 0, 0), vec3(0, 1, 0)});
  CHECK(planes.components.size() == 2);
  CHECK(planes.max_dim() == 2);
  CHECK(planes.count_at_max_dim() == 2);

  const auto picked = pick_nonzero(planes);
  REQUIRE(picked.has_value());
  CHECK(planes.components[0].distance(*picked) < 1e-12);

  const auto line_pick = pick_nonzero(cut);
  REQUIRE(line_pick.has_value());
  CHECK(std::abs((*line_pick)[1]) == doctest::Approx(1.0));

  // intersecting never increases the max component dimension
  const auto again = arrangement_intersect_union(planes, {vec3(1, 1, 1)});
  CHECK(again.max_dim() <= planes.max_dim());
}

TEST_CASE("vectors_1dir: gradient reproduces the canonical frame") {
  const auto grad = gradient_operator(2);
  Eigen::VectorXd v_star(1);
  v_star << 1.0;
  const auto block = vectors_1dir(grad, v_star, {}, 1, 64);
  REQUIRE(block.w.size() == 2);
  for (int i = 0; i < 2; ++i) {
    // canonical up to sign
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(2);
    expect[i] = 1.0;
    CHECK((block.w[i].cwiseAbs() - expect).norm() < 1e-10);
    CHECK(block.e[i].dot(symbol_eval(grad, block.xi[i]) * v_star) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(block.xi[i].dot(block.w[i]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("vectors_1dir: deformation block passes the factorization identity") {
  const auto def = deformation_operator(2);
  const Eigen::VectorXd v_star = vec2(1, 0);
  const auto block = vectors_1dir(def, v_star, {}, 7, 128);
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd v_i = symbol_eval(def, block.xi[i]).transpose() * block.e[i];
    // <w,xi><v,vv> == <e, A(xi)vv> on canonical pairs
    for (int k = 0; k < 2; ++k)
      for (int vv = 0; vv < 2; ++vv) {
        const double lhs = block.w[i][k] * v_i[vv];
        const double rhs = (def.coeff[k].transpose() * block.e[i])[vv];
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
  }
}

TEST_CASE("vectors_1dir rejects hopeless inputs") {
  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK_THROWS_AS(vectors_1dir(partial_x1_operator(2), one, {}, 1, 32), ConstructionError);
  CHECK_THROWS_AS(vectors_1dir(gradient_operator(2), Eigen::VectorXd::Zero(1)), InputError);
}

TEST_CASE("construct_certificate: gradient gives m = 1 and verifies exactly") {
  const auto grad = gradient_operator(2);
  const auto cert = construct_certificate(grad, 1, 128);
  CHECK(cert.m == 1);
  const auto report = verify_certificate(grad, cert);
  CHECK(report.identity_residual < 1e-10);
  REQUIRE(report.independence_margins.size() == 1);
  CHECK(report.independence_margins[0] > 1e-8);
  CHECK(report.gamma_bound > 0.0);
  CHECK(report.arrangement_reaches_zero);
  CHECK(report.pass());
}

TEST_CASE("construct_certificate: deformation n=2 verifies; chain decreases") {
  const auto def = deformation_operator(2);
  const auto cert = construct_certificate(def, 3, 256);
  CHECK(cert.m >= 1);
  const auto report = verify_certificate(def, cert);
  CHECK(report.identity_residual < 1e-10);
  for (double margin : report.independence_margins) CHECK(margin > 1e-8);
  CHECK(report.gamma_bound > 0.0);
  CHECK(report.arrangement_reaches_zero);

  const auto profile = certificate_chain_profile(def, cert);
  REQUIRE(profile.size() == static_cast<std::size_t>(cert.m) + 1);
  for (std::size_t s = 1; s < profile.size(); ++s) {
    const bool strict =
        profile[s].max_dim < profile[s - 1].max_dim ||
        (profile[s].max_dim == profile[s - 1].max_dim &&
         profile[s].count_at_max_dim < profile[s - 1].count_at_max_dim);
    CHECK(strict);
  }
  CHECK(profile.back().max_dim == 0);
}

TEST_CASE("construct_certificate refuses the Cauchy-Riemann system") {
  CHECK_THROWS_AS(construct_certificate(cauchy_riemann_operator(), 1, 64), ConstructionError);
}

TEST_CASE("verify_certificate: hand-built gradient certificate is exact") {
  const auto grad = gradient_operator(2);
  CancelingCertificate cert;
  cert.m = 1;
  Eigen::VectorXd one(1);
  one << 1.0;
  cert.w = {{vec2(1, 0), vec2(0, 1)}};
  cert.v = {{one, one}};
  cert.e = {{vec2(1, 0), vec2(0, 1)}};
  cert.xi = {{vec2(1, 0), vec2(0, 1)}};
  const auto report = verify_certificate(grad, cert);
  CHECK(report.identity_residual == 0.0);
  CHECK(report.independence_margins[0] == 1.0);
  CHECK(report.gamma_bound == 1.0);
  CHECK(report.pass());

  // duplicated direction kills the independence margin
  auto tampered = cert;
  tampered.w[0][1] = tampered.w[0][0];
  const auto bad = verify_certificate(grad, tampered);
  CHECK(bad.independence_margins[0] == 0.0);
  CHECK_FALSE(bad.pass());
}

TEST_CASE("gamma_lower_bound: frozen values and homogeneity") {
  // Alvino configuration on the plane: blocks of the dual basis
  const std::vector<std::vector<Eigen::VectorXd>> fam = {{vec2(1, 0), vec2(1, 0)},
                                                         {vec2(0, 1), vec2(0, 1)}};
  // oracle: 1-D minimization of max(|cos|, |sin|) over the circle
  double oracle = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100000; ++k) {
    const double theta = 2.0 * M_PI * k / 100000.0;
    oracle = std::min(oracle, std::max(std::abs(std::cos(theta)), std::abs(std::sin(theta))));
  }
  CHECK(oracle == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

  const auto bound = gamma_lower_bound(fam);
  CHECK(bound.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(bound.arrangement_reaches_zero);

  // common kernel vector: exact check fails, sampled bound collapses
  const auto degenerate = gamma_lower_bound({{vec2(1, 0), vec2(1, 0)}});
  CHECK_FALSE(degenerate.arrangement_reaches_zero);
  CHECK(degenerate.value < 1e-6);

  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK(gamma_lower_bound({{one}}).value == 1.0);

  // positive homogeneity, lambda = 2 is exact in binary arithmetic
  std::vector<std::vector<Eigen::VectorXd>> doubled = fam;
  for (auto& fam_j : doubled)
    for (auto& cov : fam_j) cov *= 2.0;
  CHECK(gamma_lower_bound(doubled).value == 2.0 * bound.value);
}

TEST_CASE("maximally_linearly_independent") {
  const std::vector<Eigen::VectorXd> basis3 = {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
  CHECK(maximally_linearly_independent(basis3));

  auto repeated = basis3;
  repeated.push_back(vec3(1, 0, 0));
  CHECK_FALSE(maximally_linearly_independent(repeated));

  CHECK(maximally_linearly_independent({vec2(1, 0), vec2(0, 1), vec2(1, 1)}));

  std::vector<Eigen::VectorXd> too_many(21, vec2(1, 0));
  CHECK_THROWS_AS(maximally_linearly_independent(too_many), InputError);
}
