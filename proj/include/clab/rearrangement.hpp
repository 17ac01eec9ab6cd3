#pragma once

#include "clab/field.hpp"

namespace clab {

/// Exact distribution function of the piecewise-constant interpolant:
/// thresholds are the distinct positive values of |u| in decreasing order,
/// measures[k] = h^n * #{ |u| > thresholds[k] }.
struct DistributionProfile {
  std::vector<double> thresholds;
  std::vector<double> measures;
  double total_measure = 0.0;  // h^n * #{ |u| > 0 }

  /// mu(t) = h^n * #{ |u| > t } for any t >= 0.
  double mu(double t) const;
};

DistributionProfile distribution(const SampledField& field);

inline constexpr double kLorentzQInf = -1.0;  // sentinel for q = infinity

/// Lorentz quasinorm of the piecewise-constant field, exact per step:
///   q < inf : ( (p/q) sum_j (c_j h^n)^{q/p} (b_j^q - b_{j+1}^q) )^{1/q}
///   q = inf : max_j b_j (c_j h^n)^{1/p}
/// over the distinct decreasing values b_j with c_j = #{ |u| >= b_j }.
/// Vector fields are reduced with the pointwise Euclidean norm. p must be
/// > 1; pass kLorentzQInf (or infinity) for q = infinity.
double lorentz_norm(const SampledField& field, double p, double q);

/// Hardy-quotient report: midpoint quadrature of the integral of |u|/|x|
/// against the gradient L1 mass and the L^{n/(n-1),1} norm.
struct HardyReport {
  double integral = 0.0;        // integral of |u(x)| / |x|
  double grad_l1 = 0.0;         // caller-supplied
  double lorentz_lhs = 0.0;     // |u| in L^{n/(n-1),1}
  double ratio_vs_grad = 0.0;   // integral / grad_l1
  double ratio_vs_lorentz = 0.0;
};

/// Cells touching the origin average 1/|x| over a 2^n midpoint subsample.
HardyReport lorentz_holder_hardy(const SampledField& field, double grad_l1);

}  // namespace clab
