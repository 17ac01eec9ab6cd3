#pragma once

#include "clab/inequality.hpp"

namespace clab {

/// Box-bounded parameter space over named generator parameters (dim <= 8).
struct ParameterBox {
  std::vector<std::string> names;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(names.size()); }
  void validate() const;
};

/// Field template the search mutates: the named parameters override the
/// base generator parameters.
struct FieldTemplate {
  std::string generator = "gaussian_bump";
  int n = 2;
  std::vector<int> shape;
  double h = 0.0;
  int dimV = 1;
  GeneratorParams base;

  SampledField instantiate(const ParameterBox& box, const Eigen::VectorXd& point,
                           int refine = 1) const;
};

enum class ExtremizeProblem { alvino, korn, certificate };

struct ExtremizeResult {
  VerificationReport best;          // at the template resolution
  VerificationReport refined;       // incumbent re-evaluated at 2x resolution
  Eigen::VectorXd best_point;
  GeneratorParams best_params;
  int evaluations = 0;
};

/// Derivative-free Nelder-Mead ratio maximization over the box (trial
/// points clamped), deterministic given the seed. budget caps evaluations.
ExtremizeResult extremizer_search(ExtremizeProblem problem, const OperatorSymbol* op,
                                  const CancelingCertificate* cert, const FieldTemplate& tmpl,
                                  const ParameterBox& box, int budget, std::uint64_t seed);

/// Generic Nelder-Mead minimizer on a clamped box (used by the search, and
/// exposed for reuse). Returns the best point found.
Eigen::VectorXd nelder_mead_box(const std::function<double(const Eigen::VectorXd&)>& objective,
                                const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                const Eigen::VectorXd& start, int budget, Rng& rng);

}  // namespace clab
