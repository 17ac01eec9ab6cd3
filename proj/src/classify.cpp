#include "clab/classify.hpp"

#include <algorithm>
#include <limits>

namespace clab {

namespace {

double min_singular_value(const OperatorSymbol& a, const Eigen::VectorXd& xi) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(symbol_eval(a, xi));
  return svd.singularValues().minCoeff();
}

}  // namespace

EllipticityVerdict is_elliptic(const OperatorSymbol& a, int samples, double tol) {
  if (samples < 2 * a.n) throw InputError("is_elliptic: need at least 2n samples");
  if (tol <= 0.0) throw InputError("is_elliptic: tol must be positive");

  EllipticityVerdict verdict;
  verdict.samples = samples;

  double worst = std::numeric_limits<double>::infinity();
  Eigen::VectorXd worst_xi = Eigen::VectorXd::Unit(a.n, 0);
  double scale = 0.0;
  for (const auto& xi : sphere_low_discrepancy(a.n, samples)) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(symbol_eval(a, xi));
    const auto& sv = svd.singularValues();
    scale = std::max(scale, sv.maxCoeff());
    if (sv.minCoeff() < worst) {
      worst = sv.minCoeff();
      worst_xi = xi;
    }
  }

  // local derivative-free refinement from the worst sample
  const int refine_steps = 50;
  worst_xi = sphere_descent([&](const Eigen::VectorXd& xi) { return min_singular_value(a, xi); },
                            worst_xi, refine_steps);
  worst = min_singular_value(a, worst_xi);

  verdict.refine_steps = refine_steps;
  verdict.symbol_scale = scale;
  verdict.min_singular_value = worst;
  verdict.worst_xi = worst_xi;
  verdict.elliptic = worst > tol * scale;
  return verdict;
}

Subspace span_image(const OperatorSymbol& a, const Subspace& w) {
  if (w.ambient_dim() != a.n) throw InputError("span_image: subspace lives in the wrong space");
  if (w.dim() == 0) return Subspace::zero(a.dimE);
  Eigen::MatrixXd stacked(a.dimE, w.dim() * a.dimV);
  for (int c = 0; c < w.dim(); ++c)
    stacked.middleCols(c * a.dimV, a.dimV) = symbol_eval(a, w.basis().col(c));
  return Subspace::from_span(stacked);
}

CancelingVerdict is_l_canceling(const OperatorSymbol& a, int l, int max_rounds,
                                std::uint64_t seed, const std::vector<Subspace>& initial_subspaces) {
  if (l < 0 || l > a.n) throw InputError("is_l_canceling: l out of range");
  CancelingVerdict verdict;
  verdict.l = l;
  verdict.residual = Subspace::zero(a.dimE);

  if (l == 0) {
    // every operator is 0-canceling; the span over the zero subspace is {0}
    verdict.canceling = true;
    return verdict;
  }
  if (l == a.n) {
    verdict.canceling = a.is_zero();
    if (!verdict.canceling) verdict.residual = span_image(a, Subspace::full(a.n));
    verdict.witnesses.push_back(Subspace::full(a.n));
    return verdict;
  }

  Rng rng(seed);
  Subspace running = Subspace::full(a.dimE);
  int since_shrink = 0;
  for (int round = 0; round < max_rounds; ++round) {
    Subspace w = Subspace::zero(a.n);
    if (round < static_cast<int>(initial_subspaces.size())) {
      w = initial_subspaces[round];
      if (w.ambient_dim() != a.n || w.dim() != l)
        throw InputError("is_l_canceling: initial subspace has the wrong shape");
    } else {
      Eigen::MatrixXd gens(a.n, l);
      for (int c = 0; c < l; ++c) gens.col(c) = rng.normal_vector(a.n);
      w = Subspace::from_span(gens);
      if (w.dim() != l) continue;  // degenerate draw
    }
    const int before = running.dim();
    running = running.intersect(span_image(a, w));
    verdict.rounds_used = round + 1;
    if (running.dim() < before) {
      verdict.witnesses.push_back(w);
      since_shrink = 0;
    } else {
      ++since_shrink;
    }
    if (running.dim() == 0) {
      verdict.canceling = true;
      verdict.residual = running;
      return verdict;
    }
    if (since_shrink >= a.dimE) break;
  }
  verdict.canceling = false;
  verdict.stalled = true;
  verdict.residual = running;
  return verdict;
}

}  // namespace clab
