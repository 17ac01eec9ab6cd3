#include "clab/extremize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clab {

void ParameterBox::validate() const {
  if (names.empty() || dim() > 8)
    throw InputError("ParameterBox: dimension must be between 1 and 8");
  if (lo.size() != dim() || hi.size() != dim())
    throw InputError("ParameterBox: bound sizes do not match the names");
  for (int i = 0; i < dim(); ++i)
    if (!(lo[i] < hi[i])) throw InputError("ParameterBox: empty interval for " + names[i]);
}

SampledField FieldTemplate::instantiate(const ParameterBox& box, const Eigen::VectorXd& point,
                                        int refine) const {
  GeneratorParams params = base;
  for (int i = 0; i < box.dim(); ++i) params[box.names[i]] = point[i];
  std::vector<int> grid = shape;
  for (auto& e : grid) e *= refine;
  return generate_field(generator, n, grid, h / refine, dimV, params);
}

Eigen::VectorXd nelder_mead_box(const std::function<double(const Eigen::VectorXd&)>& objective,
                                const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                const Eigen::VectorXd& start, int budget, Rng& rng) {
  const int dim = static_cast<int>(lo.size());
  const auto clamp = [&](Eigen::VectorXd p) {
    for (int i = 0; i < dim; ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
    return p;
  };

  int evals = 0;
  const auto eval = [&](const Eigen::VectorXd& p) {
    ++evals;
    return objective(p);
  };

  struct Vertex {
    Eigen::VectorXd x;
    double f;
  };
  std::vector<Vertex> simplex;
  simplex.push_back({clamp(start), eval(clamp(start))});
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd p = start;
    const double span = hi[i] - lo[i];
    p[i] += 0.25 * span * (1.0 + 0.1 * (rng.uniform() - 0.5));
    if (p[i] > hi[i]) p[i] = start[i] - 0.25 * span;
    simplex.push_back({clamp(p), eval(clamp(p))});
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (evals < budget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += simplex[i].x;
    centroid /= dim;

    const Vertex& worst = simplex.back();
    const Eigen::VectorXd reflected = clamp(centroid + alpha * (centroid - worst.x));
    const double f_ref = eval(reflected);

    if (f_ref < simplex.front().f) {
      const Eigen::VectorXd expanded = clamp(centroid + gamma * (reflected - centroid));
      const double f_exp = evals < budget ? eval(expanded) : f_ref;
      simplex.back() = f_exp < f_ref ? Vertex{expanded, f_exp} : Vertex{reflected, f_ref};
    } else if (f_ref < simplex[simplex.size() - 2].f) {
      simplex.back() = {reflected, f_ref};
    } else {
      const Eigen::VectorXd contracted = clamp(centroid + rho * (worst.x - centroid));
      const double f_con = evals < budget ? eval(contracted) : f_ref;
      if (f_con < worst.f) {
        simplex.back() = {contracted, f_con};
      } else {
        for (std::size_t i = 1; i < simplex.size() && evals < budget; ++i) {
          simplex[i].x = clamp(simplex[0].x + sigma * (simplex[i].x - simplex[0].x));
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return simplex.front().x;
}

ExtremizeResult extremizer_search(ExtremizeProblem problem, const OperatorSymbol* op,
                                  const CancelingCertificate* cert, const FieldTemplate& tmpl,
                                  const ParameterBox& box, int budget, std::uint64_t seed) {
  box.validate();
  if (budget < 1) throw InputError("extremizer_search: budget must be positive");
  if (problem == ExtremizeProblem::certificate && (op == nullptr || cert == nullptr))
    throw InputError("extremizer_search: certificate problems need an operator and certificate");

  const auto run_case = [&](const SampledField& field) -> VerificationReport {
    switch (problem) {
      case ExtremizeProblem::alvino:
        return verify_alvino(field);
      case ExtremizeProblem::korn:
        return verify_korn_sobolev(field);
      case ExtremizeProblem::certificate:
        return verify_certificate_inequality(*op, *cert, field);
    }
    throw InputError("extremizer_search: unknown problem");
  };

  ExtremizeResult result;
  const auto objective = [&](const Eigen::VectorXd& point) {
    ++result.evaluations;
    try {
      const auto report = run_case(tmpl.instantiate(box, point));
      if (report.degenerate || report.anomaly || !std::isfinite(report.ratio))
        return std::numeric_limits<double>::infinity();
      return -report.ratio;  // maximize the ratio
    } catch (const InputError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  Rng rng(seed);
  const Eigen::VectorXd start = 0.5 * (box.lo + box.hi);
  const Eigen::VectorXd best = nelder_mead_box(objective, box.lo, box.hi, start, budget, rng);

  result.best_point = best;
  for (int i = 0; i < box.dim(); ++i) result.best_params[box.names[i]] = best[i];
  result.best = run_case(tmpl.instantiate(box, best));
  result.best.seed = seed;
  result.best.params = result.best_params;
  result.refined = run_case(tmpl.instantiate(box, best, 2));
  result.refined.seed = seed;
  result.refined.params = result.best_params;
  if (result.best.degenerate)
    throw InputError("extremizer_search: search ended on a degenerate report");
  return result;
}

}  // namespace clab
