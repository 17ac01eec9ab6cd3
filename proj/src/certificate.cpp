#include "clab/certificate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace clab {

namespace {

// max over canonical (xi, v) basis pairs of
// |<w,xi><v,vv> - <e, A(xi)vv>| relative to the block scale
double identity_residual_block(const OperatorSymbol& a, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& v, const Eigen::VectorXd& e) {
  double resid = 0.0;
  for (int k = 0; k < a.n; ++k) {
    // <e, A_k vv> = (A_k^T e)_vv ; <w, e_k><v, vv> = w_k v_vv
    const Eigen::VectorXd lhs = w[k] * v;
    const Eigen::VectorXd rhs = a.coeff[k].transpose() * e;
    resid = std::max(resid, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return resid;
}

double block_scale(const OperatorSymbol& a, const Eigen::VectorXd& w, const Eigen::VectorXd& v,
                   const Eigen::VectorXd& e) {
  return std::max({1.0, w.norm() * v.norm(), a.coeff_norm() * e.norm()});
}

}  // namespace

DirectionBlock vectors_1dir(const OperatorSymbol& a, const Eigen::VectorXd& v_star,
                            const std::vector<Eigen::VectorXd>& prior_w, std::uint64_t seed,
                            int budget) {
  if (v_star.size() != a.dimV) throw InputError("vectors_1dir: v* dimension mismatch");
  if (v_star.norm() == 0.0) throw InputError("vectors_1dir: v* must be nonzero");
  if (budget < 1) throw InputError("vectors_1dir: budget must be positive");

  DirectionBlock block;
  std::vector<Eigen::VectorXd> all_w = prior_w;  // prior entries seed the induction
  Rng rng(seed);

  while (static_cast<int>(all_w.size()) < a.n) {
    const int step = static_cast<int>(all_w.size()) + 1;

    // xi orthogonal to all chosen w: first basis vector of their annihilator
    Eigen::VectorXd xi;
    if (all_w.empty()) {
      xi = Eigen::VectorXd::Unit(a.n, 0);
    } else {
      Eigen::MatrixXd wmat(a.n, all_w.size());
      for (std::size_t c = 0; c < all_w.size(); ++c) wmat.col(c) = all_w[c];
      const Eigen::MatrixXd ann = Subspace::from_span(wmat).annihilator();
      if (ann.cols() == 0)
        throw ConstructionError("vectors_1dir: w already spans R^n before step " +
                                    std::to_string(step),
                                step);
      xi = ann.col(0);
    }

    const Eigen::VectorXd image = symbol_eval(a, xi) * v_star;
    const double image_norm = image.norm();
    if (image_norm < 1e-12 * a.coeff_norm() * v_star.norm())
      throw ConstructionError("vectors_1dir: A(xi)v* vanished at step " + std::to_string(step) +
                                  " (operator not elliptic along xi?)",
                              step);

    // search a hyperplane W with A(xi)v* outside span{A(xi')v : xi' in W};
    // the first candidate is W = xi^perp, which keeps frames canonical when
    // it works, then seeded random normals
    bool found = false;
    Eigen::VectorXd best_normal;
    Eigen::VectorXd best_resid;
    double best_score = 0.0;
    for (int trial = 0; trial < budget && !found; ++trial) {
      const Eigen::VectorXd normal = trial == 0 ? xi : rng.unit_vector(a.n);
      const double pairing = xi.dot(normal);
      if (std::abs(pairing) < 1e-6) continue;  // xi must leave W
      const Subspace w_plane = Subspace::from_span(null_space(normal.transpose()));
      const Subspace span = span_image(a, w_plane);
      Eigen::VectorXd resid = image;
      if (span.dim() > 0) resid -= span.basis() * (span.basis().transpose() * image);
      const double score = resid.norm() / image_norm;
      if (score > best_score) {
        best_score = score;
        best_normal = normal;
        best_resid = resid;
      }
      // generous acceptance: any clearly nonzero escape direction works
      if (score > 1e-6) found = true;
    }
    if (!found)
      throw ConstructionError(
          "vectors_1dir: no hyperplane escapes the image span at step " + std::to_string(step) +
              " (best residual " + std::to_string(best_score) +
              "); operator may not be (n-1)-canceling",
          step);

    // w: annihilator normal of W scaled to <xi, w> = 1
    const Eigen::VectorXd w_vec = best_normal / xi.dot(best_normal);
    // e: orthogonal escape component scaled to <e, A(xi)v*> = 1
    const Eigen::VectorXd e_vec = best_resid / best_resid.squaredNorm();

    block.xi.push_back(xi);
    block.w.push_back(w_vec);
    block.e.push_back(e_vec);
    all_w.push_back(w_vec);
  }

  // numeric postconditions of the construction; independence covers the
  // prior entries as well
  Eigen::MatrixXd wmat(a.n, a.n);
  for (int c = 0; c < a.n; ++c) wmat.col(c) = all_w[c];
  if (std::abs(wmat.determinant()) < 1e-10)
    throw ConstructionError("vectors_1dir: produced dependent directions", a.n);
  for (int i = 0; i < static_cast<int>(block.xi.size()); ++i) {
    const double nontriv = block.e[i].dot(symbol_eval(a, block.xi[i]) * v_star);
    const double biorth = block.xi[i].dot(block.w[i]);
    if (std::abs(nontriv - 1.0) > 1e-8 || std::abs(biorth - 1.0) > 1e-8)
      throw ConstructionError("vectors_1dir: normalization failed at i = " + std::to_string(i),
                              i + 1);
    const Eigen::VectorXd v_i = symbol_eval(a, block.xi[i]).transpose() * block.e[i];
    const double resid = identity_residual_block(a, block.w[i], v_i, block.e[i]) /
                         block_scale(a, block.w[i], v_i, block.e[i]);
    if (resid > 1e-10)
      throw ConstructionError("vectors_1dir: representation identity failed at i = " +
                                  std::to_string(i),
                              i + 1);
  }
  return block;
}

CancelingCertificate construct_certificate(const OperatorSymbol& a, std::uint64_t seed,
                                           int budget) {
  const auto ell = is_elliptic(a);
  if (!ell.elliptic)
    throw ConstructionError("construct_certificate: operator is not elliptic (sampled)", 0);
  const auto canc = is_l_canceling(a, a.n - 1, 256, seed);
  if (!canc.canceling)
    throw ConstructionError(
        "construct_certificate: operator is not (n-1)-canceling (residual dimension " +
            std::to_string(canc.residual.dim()) + ")",
        0);

  CancelingCertificate cert;
  cert.seed = seed;
  cert.budget = budget;

  SubspaceArrangement chain = SubspaceArrangement::full(a.dimV);
  int round = 0;
  while (auto v_star = pick_nonzero(chain)) {
    ++round;
    if (round > budget)
      throw ConstructionError("construct_certificate: chain did not reach {0} within budget",
                              round);
    const DirectionBlock block = vectors_1dir(a, *v_star, {}, seed + round, budget);

    std::vector<Eigen::VectorXd> v_covs;
    bool hits_v_star = false;
    for (int i = 0; i < a.n; ++i) {
      const Eigen::VectorXd v_i = symbol_eval(a, block.xi[i]).transpose() * block.e[i];
      if (std::abs(v_i.dot(*v_star) - 1.0) < 1e-8) hits_v_star = true;
      v_covs.push_back(v_i);
    }
    if (!hits_v_star)
      throw ConstructionError("construct_certificate: no covector pairs with v* at round " +
                                  std::to_string(round),
                              round);

    const ChainStep before{chain.max_dim(), chain.count_at_max_dim()};
    chain = arrangement_intersect_union(chain, v_covs);
    const ChainStep after{chain.is_zero() ? 0 : chain.max_dim(),
                          chain.is_zero() ? 0 : chain.count_at_max_dim()};
    const bool strict = after.max_dim < before.max_dim ||
                         (after.max_dim == before.max_dim &&
                          after.count_at_max_dim < before.count_at_max_dim);
    if (!strict)
      throw ConstructionError("construct_certificate: chain failed to decrease at round " +
                                  std::to_string(round),
                              round);

    cert.w.push_back(block.w);
    cert.v.push_back(v_covs);
    cert.e.push_back(block.e);
    cert.xi.push_back(block.xi);
    cert.m = round;
  }
  if (cert.m == 0)
    throw ConstructionError("construct_certificate: empty chain (dimV = 0?)", 0);
  return cert;
}

std::vector<ChainStep> certificate_chain_profile(const OperatorSymbol& a,
                                                 const CancelingCertificate& c) {
  std::vector<ChainStep> profile;
  SubspaceArrangement chain = SubspaceArrangement::full(a.dimV);
  profile.push_back({chain.max_dim(), chain.count_at_max_dim()});
  for (int j = 0; j < c.m; ++j) {
    chain = arrangement_intersect_union(chain, c.v[j]);
    profile.push_back({chain.is_zero() ? 0 : chain.max_dim(),
                       chain.is_zero() ? 0 : chain.count_at_max_dim()});
  }
  return profile;
}

GammaBound gamma_lower_bound(const std::vector<std::vector<Eigen::VectorXd>>& v_families,
                             int sphere_samples) {
  GammaBound bound;
  if (v_families.empty()) throw InputError("gamma_lower_bound: empty family");
  const int dimv = static_cast<int>(v_families.front().front().size());

  const auto gamma = [&](const Eigen::VectorXd& v) {
    double best_over_j = 0.0;
    for (const auto& family : v_families) {
      double worst_i = std::numeric_limits<double>::infinity();
      for (const auto& cov : family) worst_i = std::min(worst_i, std::abs(cov.dot(v)));
      best_over_j = std::max(best_over_j, worst_i);
    }
    return best_over_j;
  };

  if (dimv == 1) {
    bound.arg_min = Eigen::VectorXd::Ones(1);
    bound.value = gamma(bound.arg_min);
  } else {
    double worst = std::numeric_limits<double>::infinity();
    Eigen::VectorXd worst_v = Eigen::VectorXd::Unit(dimv, 0);
    for (const auto& v : sphere_low_discrepancy(dimv, std::max(sphere_samples, 100))) {
      const double g = gamma(v);
      if (g < worst) {
        worst = g;
        worst_v = v;
      }
    }
    worst_v = sphere_descent(gamma, worst_v, 50);
    bound.arg_min = worst_v;
    bound.value = gamma(worst_v);
  }

  // exact algebraic route: cut the full space by each family's hyperplanes
  SubspaceArrangement chain = SubspaceArrangement::full(dimv);
  for (const auto& family : v_families) {
    if (chain.is_zero()) break;
    chain = arrangement_intersect_union(chain, family);
  }
  bound.arrangement_reaches_zero = chain.is_zero();
  return bound;
}

bool CertificateReport::pass() const {
  if (identity_residual >= identity_tol) return false;
  for (double m : independence_margins)
    if (m <= independence_tol) return false;
  return gamma_bound > 0.0 && arrangement_reaches_zero;
}

CertificateReport verify_certificate(const OperatorSymbol& a, const CancelingCertificate& c) {
  CertificateReport report;
  if (c.m < 1 || static_cast<int>(c.w.size()) != c.m || static_cast<int>(c.v.size()) != c.m ||
      static_cast<int>(c.e.size()) != c.m)
    throw InputError("verify_certificate: malformed certificate");

  for (int j = 0; j < c.m; ++j) {
    if (static_cast<int>(c.w[j].size()) != a.n || static_cast<int>(c.v[j].size()) != a.n ||
        static_cast<int>(c.e[j].size()) != a.n)
      throw InputError("verify_certificate: block size mismatch");
    Eigen::MatrixXd wmat(a.n, a.n);
    for (int i = 0; i < a.n; ++i) {
      if (c.w[j][i].size() != a.n || c.v[j][i].size() != a.dimV || c.e[j][i].size() != a.dimE)
        throw InputError("verify_certificate: vector dimension mismatch");
      wmat.col(i) = c.w[j][i];
      const double resid = identity_residual_block(a, c.w[j][i], c.v[j][i], c.e[j][i]) /
                           block_scale(a, c.w[j][i], c.v[j][i], c.e[j][i]);
      report.identity_residual = std::max(report.identity_residual, resid);
    }
    report.independence_margins.push_back(std::abs(wmat.determinant()));
  }

  const GammaBound gb = gamma_lower_bound(c.v);
  report.gamma_bound = gb.value;
  report.arrangement_reaches_zero = gb.arrangement_reaches_zero;
  return report;
}

std::optional<std::vector<int>> mli_offending_subset(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) return std::nullopt;
  if (vectors.size() > 20)
    throw InputError("maximally_linearly_independent: refusing more than 20 vectors");
  const int dim = static_cast<int>(vectors.front().size());
  for (const auto& v : vectors)
    if (v.size() != dim)
      throw InputError("maximally_linearly_independent: mixed dimensions");

  const int count = static_cast<int>(vectors.size());
  const int max_size = std::min(count, dim);
  // every index subset of size <= dim must be independent or spanning;
  // larger subsets then contain a spanning one
  for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
    const int size = std::popcount(mask);
    if (size > max_size) continue;
    Eigen::MatrixXd sub(dim, size);
    std::vector<int> indices;
    for (int i = 0; i < count; ++i)
      if (mask & (1u << i)) {
        sub.col(static_cast<int>(indices.size())) = vectors[i];
        indices.push_back(i);
      }
    const int rank = numeric_rank(sub);
    if (rank != size && rank != dim) return indices;
  }
  return std::nullopt;
}

bool maximally_linearly_independent(const std::vector<Eigen::VectorXd>& vectors) {
  return !mli_offending_subset(vectors).has_value();
}

}  // namespace clab
