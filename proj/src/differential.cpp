#include "clab/differential.hpp"

#include <cmath>

namespace clab {

double central_difference(const SampledField& u, std::size_t cell, int axis, int comp) {
  const auto idx = u.unflatten(cell);
  const int extent = u.shape[axis];
  auto shifted = idx;
  if (idx[axis] == 0) {
    shifted[axis] = 1;
    return (u.at(u.flatten(shifted), comp) - u.at(cell, comp)) / u.h;
  }
  if (idx[axis] == extent - 1) {
    shifted[axis] = extent - 2;
    return (u.at(cell, comp) - u.at(u.flatten(shifted), comp)) / u.h;
  }
  shifted[axis] = idx[axis] + 1;
  const double fwd = u.at(u.flatten(shifted), comp);
  shifted[axis] = idx[axis] - 1;
  const double bwd = u.at(u.flatten(shifted), comp);
  return (fwd - bwd) / (2.0 * u.h);
}

SampledField apply_operator(const OperatorSymbol& a, const SampledField& u) {
  if (u.n != a.n) throw InputError("apply_operator: grid dimension mismatch");
  if (u.dimV != a.dimV) throw InputError("apply_operator: field has the wrong value dimension");
  if (!u.support_flag)
    throw InputError("apply_operator: field must be compactly supported (support_flag)");

  SampledField out(u.n, u.shape, u.h, a.dimE);
  Eigen::VectorXd grad(a.dimV);
  for (std::size_t c = 0; c < u.cells(); ++c) {
    for (int k = 0; k < a.n; ++k) {
      for (int comp = 0; comp < a.dimV; ++comp) grad[comp] = central_difference(u, c, k, comp);
      if (grad.isZero(0.0)) continue;
      for (int e = 0; e < a.dimE; ++e) out.at(c, e) += a.coeff[k].row(e).dot(grad);
    }
  }
  out.refresh_support_flag();
  return out;
}

double directional_derivative_l1(const SampledField& u, const Eigen::VectorXd& w,
                                 const Eigen::VectorXd& v) {
  if (w.size() != u.n) throw InputError("directional_derivative_l1: direction mismatch");
  if (v.size() != u.dimV) throw InputError("directional_derivative_l1: covector mismatch");
  if (!u.support_flag)
    throw InputError("directional_derivative_l1: field must be compactly supported");

  const double cell = u.cell_measure();
  std::vector<double> terms(u.cells());
  for (std::size_t c = 0; c < u.cells(); ++c) {
    double pairing = 0.0;
    for (int k = 0; k < u.n; ++k) {
      if (w[k] == 0.0) continue;
      double dir = 0.0;
      for (int comp = 0; comp < u.dimV; ++comp)
        dir += v[comp] * central_difference(u, c, k, comp);
      pairing += w[k] * dir;
    }
    terms[c] = std::abs(pairing) * cell;
  }
  return nonzero_pairwise_sum(terms);
}

double field_l1(const SampledField& u) {
  const SampledField mag = u.pointwise_norm();
  std::vector<double> terms(mag.values.size());
  const double cell = mag.cell_measure();
  for (std::size_t c = 0; c < terms.size(); ++c) terms[c] = std::abs(mag.values[c]) * cell;
  return nonzero_pairwise_sum(terms);
}

}  // namespace clab
