#pragma once

#include <optional>
#include <vector>

#include "clab/linalg.hpp"

namespace clab {

/// Linear subspace of R^d held as an orthonormal column basis. The empty
/// basis is the zero subspace.
class Subspace {
 public:
  Subspace(int ambient_dim, Eigen::MatrixXd orthonormal_basis, double rank_tol = kRankTol);

  /// Subspace spanned by the columns of `vectors` (orthonormalized, rank
  /// decided with rank_tol).
  static Subspace from_span(const Eigen::MatrixXd& vectors, double rank_tol = kRankTol);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  bool is_zero() const { return dim() == 0; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  double rank_tol() const { return rank_tol_; }

  /// Distance of v to this subspace (norm of the orthogonal residual).
  double distance(const Eigen::VectorXd& v) const;

  /// Containment of `other` in *this up to the rank tolerance.
  bool contains(const Subspace& other) const;

  Subspace intersect(const Subspace& other) const;

  /// Orthonormal basis of the orthogonal complement.
  Eigen::MatrixXd annihilator() const;

 private:
  int ambient_dim_;
  Eigen::MatrixXd basis_;
  double rank_tol_;
};

/// Finite union of linear subspaces, components pairwise non-contained.
/// The zero arrangement is the single zero subspace.
struct SubspaceArrangement {
  int ambient_dim = 0;
  std::vector<Subspace> components;

  static SubspaceArrangement full(int ambient_dim);
  static SubspaceArrangement zero(int ambient_dim);

  bool is_zero() const;
  int max_dim() const;
  /// Number of components of maximal dimension; the pair (max_dim,
  /// count_at_max_dim) decreases strictly along certificate chains.
  int count_at_max_dim() const;
};

/// Drops components contained in another component; preserves first-seen
/// order among the survivors.
std::vector<Subspace> prune_contained(std::vector<Subspace> components);

/// X cap (union of the hyperplanes v_i^perp), pruned for containment.
SubspaceArrangement arrangement_intersect_union(const SubspaceArrangement& x,
                                                const std::vector<Eigen::VectorXd>& covectors);

/// None for the zero arrangement; otherwise the first basis vector of the
/// largest-dimension component (ties broken by component index).
std::optional<Eigen::VectorXd> pick_nonzero(const SubspaceArrangement& x);

}  // namespace clab
