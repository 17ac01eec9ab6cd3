#include "clab/field.hpp"

#include <algorithm>
#include <cmath>

namespace clab {

SampledField::SampledField(int n_, std::vector<int> shape_, double h_, int dimV_)
    : n(n_), shape(std::move(shape_)), h(h_), dimV(dimV_) {
  if (n < 1 || static_cast<int>(shape.size()) != n)
    throw InputError("SampledField: shape must have one extent per axis");
  for (int ext : shape)
    if (ext < 1) throw InputError("SampledField: extents must be positive");
  if (h <= 0.0) throw InputError("SampledField: spacing must be positive");
  if (dimV < 1) throw InputError("SampledField: dimV must be >= 1");
  values.assign(cells() * dimV, 0.0);
}

std::size_t SampledField::cells() const {
  std::size_t total = 1;
  for (int ext : shape) total *= static_cast<std::size_t>(ext);
  return total;
}

double SampledField::cell_measure() const { return std::pow(h, n); }

std::vector<int> SampledField::unflatten(std::size_t cell) const {
  std::vector<int> idx(n);
  for (int k = n - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(cell % shape[k]);
    cell /= shape[k];
  }
  return idx;
}

std::size_t SampledField::flatten(const std::vector<int>& idx) const {
  std::size_t cell = 0;
  for (int k = 0; k < n; ++k) cell = cell * shape[k] + idx[k];
  return cell;
}

Eigen::VectorXd SampledField::cell_center(std::size_t cell) const {
  const auto idx = unflatten(cell);
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = (idx[k] + 0.5 - 0.5 * shape[k]) * h;
  return x;
}

SampledField SampledField::pointwise_norm() const {
  if (is_scalar()) return *this;
  SampledField out(n, shape, h, 1);
  out.support_flag = support_flag;
  for (std::size_t c = 0; c < cells(); ++c) {
    double sq = 0.0;
    for (int comp = 0; comp < dimV; ++comp) sq += at(c, comp) * at(c, comp);
    out.at(c) = std::sqrt(sq);
  }
  return out;
}

bool SampledField::boundary_layer_is_zero(int layers) const {
  for (std::size_t c = 0; c < cells(); ++c) {
    const auto idx = unflatten(c);
    bool boundary = false;
    for (int k = 0; k < n; ++k)
      if (idx[k] < layers || idx[k] >= shape[k] - layers) boundary = true;
    if (!boundary) continue;
    for (int comp = 0; comp < dimV; ++comp)
      if (at(c, comp) != 0.0) return false;
  }
  return true;
}

void SampledField::refresh_support_flag() { support_flag = boundary_layer_is_zero(3); }

namespace {

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

double get_param(const GeneratorParams& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void check_param_keys(const std::string& generator, const GeneratorParams& params, int n,
                      int dimV, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* name : allowed)
      if (key == name) ok = true;
    for (int c = 1; c <= dimV && !ok; ++c)
      if (key == "dir" + std::to_string(c)) ok = true;
    if (generator == "anisotropic_gaussian")
      for (int k = 1; k <= n && !ok; ++k)
        if (key == "sigma" + std::to_string(k)) ok = true;
    if (!ok) throw InputError(generator + ": unknown parameter \"" + key + "\"");
  }
}

}  // namespace

double support_window(const Eigen::VectorXd& x, const std::vector<int>& shape, double h) {
  // radial cut inside the largest centered ball that leaves 3 zero cells
  int min_extent = shape[0];
  for (int ext : shape) min_extent = std::min(min_extent, ext);
  const double r_sup = (0.5 * min_extent - 3.5) * h;
  if (r_sup <= 0.0) return 0.0;
  const double band = std::min(4.0 * h, r_sup);
  return smoothstep((r_sup - x.norm()) / band);
}

SampledField generate_field(const std::string& generator, int n, const std::vector<int>& shape,
                            double h, int dimV, const GeneratorParams& params) {
  SampledField field(n, shape, h, dimV);

  if (generator == "gaussian_bump")
    check_param_keys(generator, params, n, dimV, {"sigma", "amplitude"});
  else if (generator == "mollified_ball_indicator")
    check_param_keys(generator, params, n, dimV, {"radius", "width"});
  else if (generator == "anisotropic_gaussian")
    check_param_keys(generator, params, n, dimV, {"amplitude"});
  else if (generator == "rigid_motion_windowed")
    check_param_keys(generator, params, n, 0, {"radius", "width"});
  else
    throw InputError("unknown generator: " + generator);

  Eigen::VectorXd dir = Eigen::VectorXd::Zero(dimV);
  dir[0] = 1.0;
  bool has_dir = false;
  for (int comp = 0; comp < dimV; ++comp) {
    const auto it = params.find("dir" + std::to_string(comp + 1));
    if (it != params.end()) {
      if (!has_dir) dir.setZero();
      has_dir = true;
      dir[comp] = it->second;
    }
  }

  for (std::size_t c = 0; c < field.cells(); ++c) {
    const Eigen::VectorXd x = field.cell_center(c);
    const double window = support_window(x, shape, h);
    if (window == 0.0) continue;

    if (generator == "gaussian_bump") {
      const double sigma = get_param(params, "sigma", 1.0);
      const double amp = get_param(params, "amplitude", 1.0);
      const double v = amp * std::exp(-x.squaredNorm() / (2.0 * sigma * sigma)) * window;
      for (int comp = 0; comp < dimV; ++comp) field.at(c, comp) = v * dir[comp];
    } else if (generator == "mollified_ball_indicator") {
      const double radius = get_param(params, "radius", 1.0);
      const double width = get_param(params, "width", 4.0 * h);
      const double v = smoothstep((radius - x.norm()) / std::max(width, 1e-12)) * window;
      for (int comp = 0; comp < dimV; ++comp) field.at(c, comp) = v * dir[comp];
    } else if (generator == "anisotropic_gaussian") {
      double expo = 0.0;
      for (int k = 0; k < n; ++k) {
        const double sigma = get_param(params, "sigma" + std::to_string(k + 1), 1.0);
        expo += x[k] * x[k] / (2.0 * sigma * sigma);
      }
      const double v = get_param(params, "amplitude", 1.0) * std::exp(-expo) * window;
      for (int comp = 0; comp < dimV; ++comp) field.at(c, comp) = v * dir[comp];
    } else if (generator == "rigid_motion_windowed") {
      if (dimV != n) throw InputError("rigid_motion_windowed: needs dimV = n");
      const double radius = get_param(params, "radius", 1.0);
      const double width = get_param(params, "width", 4.0 * h);
      const double cut = smoothstep((radius - x.norm()) / std::max(width, 1e-12)) * window;
      // infinitesimal rotation in the (x1, x2) plane
      field.at(c, 0) = -x[1] * cut;
      field.at(c, 1) = x[0] * cut;
    } else {
      throw InputError("unknown generator: " + generator);
    }
  }
  field.refresh_support_flag();
  if (!field.support_flag)
    throw InputError("generator produced a field touching the boundary layer (grid too small)");
  return field;
}

SampledField random_field(int n, const std::vector<int>& shape, double h, int dimV, Rng& rng,
                          bool windowed) {
  SampledField field(n, shape, h, dimV);
  for (std::size_t c = 0; c < field.cells(); ++c) {
    const double window = windowed ? support_window(field.cell_center(c), shape, h) : 1.0;
    for (int comp = 0; comp < dimV; ++comp)
      field.at(c, comp) = (2.0 * rng.uniform() - 1.0) * window;
  }
  field.refresh_support_flag();
  return field;
}

}  // namespace clab
