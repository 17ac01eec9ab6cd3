#pragma once

#include <map>
#include <string>
#include <vector>

#include "clab/linalg.hpp"

namespace clab {

/// Function sampled on a uniform n-dimensional grid of spacing h, stored
/// cell-major (last axis fastest) with dimV components per cell. The grid is
/// centered at the origin: cell centers sit at ((index + 1/2) - extent/2) h.
struct SampledField {
  int n = 0;
  std::vector<int> shape;
  double h = 1.0;
  int dimV = 1;  // 1 = scalar
  std::vector<double> values;
  bool support_flag = false;  // boundary layer is identically zero

  SampledField() = default;
  SampledField(int n, std::vector<int> shape, double h, int dimV = 1);

  std::size_t cells() const;
  bool is_scalar() const { return dimV == 1; }
  double cell_measure() const;  // h^n

  double& at(std::size_t cell, int comp = 0) { return values[cell * dimV + comp]; }
  double at(std::size_t cell, int comp = 0) const { return values[cell * dimV + comp]; }

  std::vector<int> unflatten(std::size_t cell) const;
  std::size_t flatten(const std::vector<int>& idx) const;
  Eigen::VectorXd cell_center(std::size_t cell) const;

  /// Euclidean norm per cell; identity on scalar fields.
  SampledField pointwise_norm() const;

  /// True when every cell within `layers` of the boundary is zero.
  bool boundary_layer_is_zero(int layers = 1) const;
  /// Recomputes support_flag (3-cell layer, the generator convention).
  void refresh_support_flag();
};

/// Parameters for the built-in field generators; unknown keys are rejected.
using GeneratorParams = std::map<std::string, double>;

/// Smoothstep window that vanishes on a >= 3 cell boundary layer, rolling
/// off over a band of width 4h. All generators multiply by this window.
double support_window(const Eigen::VectorXd& x, const std::vector<int>& shape, double h);

/// Scalar or vector generators:
///  - gaussian_bump:        amplitude * exp(-|x|^2 / (2 sigma^2))
///  - mollified_ball_indicator: smoothstep((radius - |x|) / width)
///  - anisotropic_gaussian: exp(-sum x_k^2 / (2 sigma_k^2)), keys sigma1..
///  - rigid_motion_windowed: (-x2, x1, 0, ...) * ball window (vector only)
/// Vector variants of the scalar generators scale a direction vector
/// (keys dir1.., default e1).
SampledField generate_field(const std::string& generator, int n, const std::vector<int>& shape,
                            double h, int dimV, const GeneratorParams& params);

/// Uniform random field with values in [-1, 1], windowed to compact support
/// when `windowed` (used by property tests).
SampledField random_field(int n, const std::vector<int>& shape, double h, int dimV, Rng& rng,
                          bool windowed = false);

}  // namespace clab
