#include "clab/subspace.hpp"

#include <algorithm>

namespace clab {

Subspace::Subspace(int ambient_dim, Eigen::MatrixXd orthonormal_basis, double rank_tol)
    : ambient_dim_(ambient_dim), basis_(std::move(orthonormal_basis)), rank_tol_(rank_tol) {
  if (basis_.size() > 0 && basis_.rows() != ambient_dim_)
    throw InputError("Subspace: basis rows do not match ambient dimension");
  if (basis_.size() == 0) basis_ = Eigen::MatrixXd(ambient_dim_, 0);
  if (basis_.cols() > ambient_dim_)
    throw InputError("Subspace: more basis vectors than ambient dimension");
  if (basis_.cols() > 0) {
    const Eigen::MatrixXd gram = basis_.transpose() * basis_;
    const double defect =
        (gram - Eigen::MatrixXd::Identity(basis_.cols(), basis_.cols())).norm();
    if (defect > 1e-10) throw InputError("Subspace: basis is not orthonormal");
  }
}

Subspace Subspace::from_span(const Eigen::MatrixXd& vectors, double rank_tol) {
  return Subspace(static_cast<int>(vectors.rows()), column_space(vectors, rank_tol), rank_tol);
}

Subspace Subspace::zero(int ambient_dim) {
  return Subspace(ambient_dim, Eigen::MatrixXd(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ambient_dim, Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
}

double Subspace::distance(const Eigen::VectorXd& v) const {
  if (v.size() != ambient_dim_) throw InputError("Subspace::distance: dimension mismatch");
  if (dim() == 0) return v.norm();
  return (v - basis_ * (basis_.transpose() * v)).norm();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim_)
    throw InputError("Subspace::contains: ambient mismatch");
  if (other.dim() == 0) return true;
  if (other.dim() > dim()) return false;
  // residual of the other basis against this one; orthonormal columns make
  // the operator norm of the residual a clean containment measure
  const Eigen::MatrixXd resid = other.basis() - basis_ * (basis_.transpose() * other.basis());
  return resid.norm() < 1e-8;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim_)
    throw InputError("Subspace::intersect: ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return Subspace::zero(ambient_dim_);
  // z = B1 x = B2 y  <=>  [B1 -B2] (x;y) = 0
  Eigen::MatrixXd stacked(ambient_dim_, dim() + other.dim());
  stacked << basis_, -other.basis();
  const Eigen::MatrixXd nullb = null_space(stacked, rank_tol_);
  if (nullb.cols() == 0) return Subspace::zero(ambient_dim_);
  const Eigen::MatrixXd gens = basis_ * nullb.topRows(dim());
  return Subspace::from_span(gens, rank_tol_);
}

Eigen::MatrixXd Subspace::annihilator() const {
  if (dim() == 0) return Eigen::MatrixXd::Identity(ambient_dim_, ambient_dim_);
  return null_space(basis_.transpose(), rank_tol_);
}

SubspaceArrangement SubspaceArrangement::full(int ambient_dim) {
  return SubspaceArrangement{ambient_dim, {Subspace::full(ambient_dim)}};
}

SubspaceArrangement SubspaceArrangement::zero(int ambient_dim) {
  return SubspaceArrangement{ambient_dim, {Subspace::zero(ambient_dim)}};
}

bool SubspaceArrangement::is_zero() const {
  return components.size() == 1 && components.front().is_zero();
}

int SubspaceArrangement::max_dim() const {
  int best = 0;
  for (const auto& c : components) best = std::max(best, c.dim());
  return best;
}

int SubspaceArrangement::count_at_max_dim() const {
  const int md = max_dim();
  if (md == 0) return 0;
  int count = 0;
  for (const auto& c : components)
    if (c.dim() == md) ++count;
  return count;
}

std::vector<Subspace> prune_contained(std::vector<Subspace> components) {
  std::vector<Subspace> kept;
  for (std::size_t i = 0; i < components.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < components.size() && !dominated; ++j) {
      if (i == j) continue;
      if (!components[j].contains(components[i])) continue;
      // equal subspaces: keep the first occurrence only
      if (components[i].contains(components[j]) && i < j) continue;
      dominated = true;
    }
    if (!dominated) kept.push_back(components[i]);
  }
  return kept;
}

SubspaceArrangement arrangement_intersect_union(const SubspaceArrangement& x,
                                                const std::vector<Eigen::VectorXd>& covectors) {
  if (covectors.empty()) throw InputError("arrangement_intersect_union: no covectors");
  for (const auto& v : covectors) {
    if (v.size() != x.ambient_dim)
      throw InputError("arrangement_intersect_union: covector dimension mismatch");
    if (v.norm() == 0.0) throw InputError("arrangement_intersect_union: zero covector");
  }
  std::vector<Subspace> pieces;
  for (const auto& comp : x.components) {
    for (const auto& v : covectors) {
      if (comp.is_zero()) continue;
      // Y cap v^perp = B * null(v^T B)
      const Eigen::RowVectorXd vb = v.transpose() * comp.basis();
      if (vb.norm() < comp.rank_tol() * v.norm()) {
        pieces.push_back(comp);  // Y already inside the hyperplane
        continue;
      }
      const Eigen::MatrixXd nullb = null_space(vb, comp.rank_tol());
      if (nullb.cols() == 0) continue;
      pieces.push_back(Subspace::from_span(comp.basis() * nullb, comp.rank_tol()));
    }
  }
  std::erase_if(pieces, [](const Subspace& s) { return s.is_zero(); });
  pieces = prune_contained(std::move(pieces));
  if (pieces.empty()) return SubspaceArrangement::zero(x.ambient_dim);
  return SubspaceArrangement{x.ambient_dim, std::move(pieces)};
}

std::optional<Eigen::VectorXd> pick_nonzero(const SubspaceArrangement& x) {
  if (x.is_zero() || x.components.empty()) return std::nullopt;
  const int md = x.max_dim();
  if (md == 0) return std::nullopt;
  for (const auto& c : x.components)
    if (c.dim() == md) return c.basis().col(0);
  return std::nullopt;
}

}  // namespace clab
