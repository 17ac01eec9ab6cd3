#include "clab/voxel.hpp"

#include <cmath>

namespace clab {

VoxelSet::VoxelSet(int n_, double h_) : n(n_), h(h_) {
  if (n < 1) throw InputError("VoxelSet: dimension must be >= 1");
  if (h <= 0.0) throw InputError("VoxelSet: spacing must be positive");
}

double VoxelSet::measure() const {
  return static_cast<double>(cells.size()) * std::pow(h, n);
}

void VoxelSet::add(const Eigen::VectorXi& cell) {
  if (cell.size() != n) throw InputError("VoxelSet::add: wrong index dimension");
  cells.push_back(cell);
}

namespace {

// iterate cell indices of the bounding box [lo, hi] (inclusive)
template <typename F>
void for_each_cell(const Eigen::VectorXi& lo, const Eigen::VectorXi& hi, F&& fn) {
  const int n = static_cast<int>(lo.size());
  Eigen::VectorXi idx = lo;
  while (true) {
    fn(idx);
    int k = n - 1;
    while (k >= 0) {
      if (++idx[k] <= hi[k]) break;
      idx[k] = lo[k];
      --k;
    }
    if (k < 0) return;
  }
}

}  // namespace

VoxelSet VoxelSet::ball(int n, double h, double radius, const Eigen::VectorXd& center) {
  if (radius <= 0.0) throw InputError("VoxelSet::ball: radius must be positive");
  Eigen::VectorXd c = center.size() == 0 ? Eigen::VectorXd::Zero(n) : center;
  if (c.size() != n) throw InputError("VoxelSet::ball: center dimension mismatch");
  VoxelSet set(n, h);
  Eigen::VectorXi lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    lo[k] = static_cast<int>(std::floor((c[k] - radius) / h)) - 1;
    hi[k] = static_cast<int>(std::floor((c[k] + radius) / h)) + 1;
  }
  for_each_cell(lo, hi, [&](const Eigen::VectorXi& idx) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x[k] = (idx[k] + 0.5) * h;
    if ((x - c).norm() < radius) set.cells.push_back(idx);
  });
  return set;
}

VoxelSet VoxelSet::parallelepiped(int n, double h, const Eigen::MatrixXd& spanning,
                                  const Eigen::VectorXd& origin) {
  if (spanning.rows() != n || spanning.cols() != n)
    throw InputError("VoxelSet::parallelepiped: spanning matrix must be n x n");
  if (std::abs(spanning.determinant()) < 1e-12)
    throw InputError("VoxelSet::parallelepiped: spanning vectors are degenerate");
  Eigen::VectorXd o = origin.size() == 0 ? Eigen::VectorXd::Zero(n) : origin;
  const Eigen::MatrixXd inv = spanning.inverse();

  // bounding box over the 2^n corners
  Eigen::VectorXd lo_x = o, hi_x = o;
  for (int mask = 1; mask < (1 << n); ++mask) {
    Eigen::VectorXd corner = o;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) corner += spanning.col(k);
    lo_x = lo_x.cwiseMin(corner);
    hi_x = hi_x.cwiseMax(corner);
  }
  VoxelSet set(n, h);
  Eigen::VectorXi lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    lo[k] = static_cast<int>(std::floor(lo_x[k] / h)) - 1;
    hi[k] = static_cast<int>(std::floor(hi_x[k] / h)) + 1;
  }
  for_each_cell(lo, hi, [&](const Eigen::VectorXi& idx) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x[k] = (idx[k] + 0.5) * h;
    const Eigen::VectorXd y = inv * (x - o);
    if ((y.array() >= 0.0).all() && (y.array() < 1.0).all()) set.cells.push_back(idx);
  });
  return set;
}

VoxelSet VoxelSet::cube(int n, double h, int side_cells) {
  if (side_cells < 1) throw InputError("VoxelSet::cube: side must be >= 1 cell");
  VoxelSet set(n, h);
  Eigen::VectorXi lo = Eigen::VectorXi::Zero(n);
  Eigen::VectorXi hi = Eigen::VectorXi::Constant(n, side_cells - 1);
  for_each_cell(lo, hi, [&](const Eigen::VectorXi& idx) { set.cells.push_back(idx); });
  return set;
}

DirectionBasis::DirectionBasis(std::vector<Eigen::VectorXd> w) : w_(std::move(w)) {
  const int n = static_cast<int>(w_.size());
  if (n < 1) throw InputError("DirectionBasis: empty");
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (w_[i].size() != n) throw InputError("DirectionBasis: vector dimension mismatch");
    if (std::abs(w_[i].norm() - 1.0) > 1e-12)
      throw InputError("DirectionBasis: vectors must have unit length");
    m.col(i) = w_[i];
  }
  abs_det_ = std::abs(m.determinant());
  if (abs_det_ <= 1e-10) throw InputError("DirectionBasis: degenerate basis");
}

}  // namespace clab
