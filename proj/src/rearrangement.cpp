#include "clab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clab {

double DistributionProfile::mu(double t) const {
  if (thresholds.empty() || t >= thresholds.front()) return 0.0;
  // first threshold <= t; its measure counts the values strictly above it,
  // but for t between thresholds the count is that of the next larger value
  std::size_t lo = 0, hi = thresholds.size();
  while (lo < hi) {  // first index with thresholds[idx] <= t
    const std::size_t mid = (lo + hi) / 2;
    if (thresholds[mid] <= t)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo < thresholds.size() ? measures[lo] : total_measure;
}

DistributionProfile distribution(const SampledField& field) {
  if (!field.is_scalar())
    throw InputError("distribution: apply pointwise_norm to vector fields first");
  if (field.values.empty()) throw InputError("distribution: empty field");

  std::vector<double> mags;
  mags.reserve(field.values.size());
  for (double v : field.values) {
    const double m = std::abs(v);
    if (m > 0.0) mags.push_back(m);
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());

  DistributionProfile profile;
  const double cell = field.cell_measure();
  std::size_t i = 0;
  while (i < mags.size()) {
    profile.thresholds.push_back(mags[i]);
    profile.measures.push_back(static_cast<double>(i) * cell);  // strictly above
    while (i < mags.size() && mags[i] == profile.thresholds.back()) ++i;
  }
  profile.total_measure = static_cast<double>(mags.size()) * cell;
  return profile;
}

double lorentz_norm(const SampledField& field, double p, double q) {
  if (p <= 1.0) throw InputError("lorentz_norm: p <= 1 is out of scope");
  const bool q_inf = (q == kLorentzQInf) || std::isinf(q);
  if (!q_inf && q < 1.0) throw InputError("lorentz_norm: q must be >= 1 or infinity");

  const SampledField mag = field.is_scalar() ? field : field.pointwise_norm();
  if (mag.values.empty()) throw InputError("lorentz_norm: empty field");
  std::vector<double> vals;
  vals.reserve(mag.values.size());
  for (double v : mag.values)
    if (v != 0.0) vals.push_back(std::abs(v));
  if (vals.empty()) return 0.0;
  std::sort(vals.begin(), vals.end(), std::greater<double>());

  // distinct decreasing values b_j with cumulative counts c_j = #{ |u| >= b_j }
  std::vector<double> distinct;
  std::vector<double> count_ge;
  for (std::size_t i = 0; i < vals.size();) {
    distinct.push_back(vals[i]);
    while (i < vals.size() && vals[i] == distinct.back()) ++i;
    count_ge.push_back(static_cast<double>(i));
  }

  const double cell = mag.cell_measure();
  const std::size_t steps = distinct.size();

  if (q_inf) {
    double best = 0.0;
    for (std::size_t j = 0; j < steps; ++j)
      best = std::max(best, distinct[j] * std::pow(count_ge[j] * cell, 1.0 / p));
    return best;
  }

  std::vector<double> terms(steps);
  for (std::size_t j = 0; j < steps; ++j) {
    const double b_next = j + 1 < steps ? distinct[j + 1] : 0.0;
    terms[j] = std::pow(count_ge[j] * cell, q / p) *
               (std::pow(distinct[j], q) - std::pow(b_next, q));
  }
  const double sum = (p / q) * pairwise_sum(terms);
  return std::pow(sum, 1.0 / q);
}

HardyReport lorentz_holder_hardy(const SampledField& field, double grad_l1) {
  if (field.n < 2) throw InputError("lorentz_holder_hardy: needs n >= 2");
  const SampledField mag = field.pointwise_norm();
  if (!mag.boundary_layer_is_zero(1))
    throw InputError("lorentz_holder_hardy: field must be compactly supported");

  const double cell = field.cell_measure();
  std::vector<double> terms;
  terms.reserve(mag.cells());
  for (std::size_t c = 0; c < mag.cells(); ++c) {
    const double v = mag.at(c);
    if (v == 0.0) {
      terms.push_back(0.0);
      continue;
    }
    const Eigen::VectorXd x = mag.cell_center(c);
    double inv_r;
    if (x.norm() > 0.75 * field.h * std::sqrt(static_cast<double>(field.n))) {
      inv_r = 1.0 / x.norm();
    } else {
      // near-origin cell: average 1/|x| over the 2^n sub-cell midpoints
      double acc = 0.0;
      const int corners = 1 << field.n;
      for (int mask = 0; mask < corners; ++mask) {
        Eigen::VectorXd y = x;
        for (int k = 0; k < field.n; ++k)
          y[k] += ((mask >> k) & 1 ? 0.25 : -0.25) * field.h;
        const double r = y.norm();
        if (r == 0.0) throw InputError("lorentz_holder_hardy: subsample hit the origin");
        acc += 1.0 / r;
      }
      inv_r = acc / corners;
    }
    terms.push_back(v * inv_r * cell);
  }

  HardyReport report;
  report.integral = nonzero_pairwise_sum(terms);
  report.grad_l1 = grad_l1;
  const double n = field.n;
  report.lorentz_lhs = lorentz_norm(field, n / (n - 1.0), 1.0);
  report.ratio_vs_grad = grad_l1 > 0.0 ? report.integral / grad_l1 : 0.0;
  report.ratio_vs_lorentz = report.lorentz_lhs > 0.0 ? report.integral / report.lorentz_lhs : 0.0;
  return report;
}

}  // namespace clab
