#pragma once

#include <unordered_set>
#include <vector>

#include "clab/linalg.hpp"

namespace clab {

/// Finite union of lattice cells [c, c+1) h in R^n.
struct VoxelSet {
  int n = 0;
  double h = 1.0;
  std::vector<Eigen::VectorXi> cells;

  VoxelSet() = default;
  VoxelSet(int n, double h);

  double measure() const;  // |cells| h^n

  void add(const Eigen::VectorXi& cell);

  /// Cells whose center lies in the ball of the given radius.
  static VoxelSet ball(int n, double h, double radius,
                       const Eigen::VectorXd& center = Eigen::VectorXd());
  /// Cells whose center lies in { origin + P y : y in [0,1)^n } for the
  /// spanning matrix P (columns are the edge vectors).
  static VoxelSet parallelepiped(int n, double h, const Eigen::MatrixXd& spanning,
                                 const Eigen::VectorXd& origin = Eigen::VectorXd());
  /// The axis cube [0, side)^n.
  static VoxelSet cube(int n, double h, int side_cells);
};

/// Basis of unit vectors with a nondegenerate determinant.
class DirectionBasis {
 public:
  explicit DirectionBasis(std::vector<Eigen::VectorXd> w);

  int n() const { return static_cast<int>(w_.size()); }
  const std::vector<Eigen::VectorXd>& vectors() const { return w_; }
  const Eigen::VectorXd& operator[](int i) const { return w_[i]; }
  double abs_det() const { return abs_det_; }

 private:
  std::vector<Eigen::VectorXd> w_;
  double abs_det_ = 0.0;
};

}  // namespace clab
