#include "clab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <unordered_set>

namespace clab {

namespace {

struct RasterKey {
  std::array<int, 3> idx{0, 0, 0};
  bool operator==(const RasterKey&) const = default;
};

struct RasterKeyHash {
  std::size_t operator()(const RasterKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : k.idx) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

using RasterSet = std::unordered_set<RasterKey, RasterKeyHash>;

// does the line { base + t w } meet the axis box [lo, lo + h]^n ?
bool ray_hits_box(const Eigen::VectorXd& base, const Eigen::VectorXd& w,
                  const Eigen::VectorXd& lo, double h, double eps) {
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (int k = 0; k < base.size(); ++k) {
    const double a = lo[k] - eps, b = lo[k] + h + eps;
    if (std::abs(w[k]) < 1e-300) {
      if (base[k] < a || base[k] > b) return false;
      continue;
    }
    double t1 = (a - base[k]) / w[k];
    double t2 = (b - base[k]) / w[k];
    if (t1 > t2) std::swap(t1, t2);
    t_lo = std::max(t_lo, t1);
    t_hi = std::min(t_hi, t2);
    if (t_lo > t_hi) return false;
  }
  return true;
}

struct ShadowScratch {
  RasterSet centers;
  RasterSet corners;
};

// orthonormal frame of w^perp (columns), deterministic via Householder
Eigen::MatrixXd perp_frame(const Eigen::VectorXd& w_unit) {
  const int n = static_cast<int>(w_unit.size());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(w_unit);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

void rasterize_shadow(const VoxelSet& k, const Eigen::VectorXd& w_unit, double raster_h,
                      ShadowScratch& out) {
  const int n = k.n;
  const int m = n - 1;
  const Eigen::MatrixXd frame = perp_frame(w_unit);
  const double eps = 1e-12 * k.h;

  Eigen::VectorXd corner(n);
  Eigen::VectorXd y(m);
  for (const auto& cell : k.cells) {
    // projected bounding box of the voxel corners in frame coordinates
    Eigen::VectorXd lo_y = Eigen::VectorXd::Constant(m, std::numeric_limits<double>::infinity());
    Eigen::VectorXd hi_y = -lo_y;
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int a = 0; a < n; ++a)
        corner[a] = (cell[a] + ((mask >> a) & 1 ? 1.0 : 0.0)) * k.h;
      y = frame.transpose() * corner;
      lo_y = lo_y.cwiseMin(y);
      hi_y = hi_y.cwiseMax(y);
    }
    Eigen::VectorXd box_lo(n);
    for (int a = 0; a < n; ++a) box_lo[a] = cell[a] * k.h;

    // raster cells in the bounding box; exact membership via the ray test
    std::array<int, 3> lo_idx{0, 0, 0}, hi_idx{0, 0, 0};
    for (int a = 0; a < m; ++a) {
      lo_idx[a] = static_cast<int>(std::floor(lo_y[a] / raster_h)) - 1;
      hi_idx[a] = static_cast<int>(std::floor(hi_y[a] / raster_h)) + 1;
    }
    std::array<int, 3> idx = lo_idx;
    while (true) {
      Eigen::VectorXd center(m), lattice(m);
      for (int a = 0; a < m; ++a) {
        center[a] = (idx[a] + 0.5) * raster_h;
        lattice[a] = idx[a] * raster_h;
      }
      if (ray_hits_box(frame * center, w_unit, box_lo, k.h, eps)) {
        RasterKey key;
        for (int a = 0; a < m; ++a) key.idx[a] = idx[a];
        out.centers.insert(key);
      }
      if (ray_hits_box(frame * lattice, w_unit, box_lo, k.h, eps)) {
        RasterKey key;
        for (int a = 0; a < m; ++a) key.idx[a] = idx[a];
        out.corners.insert(key);
      }
      int a = m - 1;
      while (a >= 0) {
        if (++idx[a] <= hi_idx[a]) break;
        idx[a] = lo_idx[a];
        --a;
      }
      if (a < 0) break;
    }
  }
}

ShadowDetail shadow_from_scratch(const ShadowScratch& scratch, int m, double raster_h) {
  ShadowDetail detail;
  detail.covered_cells = static_cast<long>(scratch.centers.size());
  detail.measure = static_cast<double>(detail.covered_cells) * std::pow(raster_h, m);

  // a cell is boundary when its center and its 2^m cell corners disagree
  const auto corner_count = [&](const RasterKey& cell) {
    int inside = 0;
    for (int mask = 0; mask < (1 << m); ++mask) {
      RasterKey corner = cell;
      for (int a = 0; a < m; ++a) corner.idx[a] += (mask >> a) & 1;
      if (scratch.corners.count(corner)) ++inside;
    }
    return inside;
  };
  long boundary = 0;
  for (const auto& cell : scratch.centers)
    if (corner_count(cell) != (1 << m)) ++boundary;
  // cells missed by the center but touched by a corner
  RasterSet candidates;
  for (const auto& corner : scratch.corners)
    for (int mask = 0; mask < (1 << m); ++mask) {
      RasterKey cell = corner;
      for (int a = 0; a < m; ++a) cell.idx[a] -= (mask >> a) & 1;
      candidates.insert(cell);
    }
  for (const auto& cell : candidates)
    if (!scratch.centers.count(cell)) ++boundary;

  detail.boundary_cells = boundary;
  detail.tolerance_abs = static_cast<double>(boundary) * std::pow(raster_h, m);
  return detail;
}

}  // namespace

ShadowDetail shadow_detail(const VoxelSet& k, const Eigen::VectorXd& w, double raster_h) {
  if (w.size() != k.n) throw InputError("shadow: direction dimension mismatch");
  const double norm = w.norm();
  if (norm == 0.0) throw InputError("shadow: degenerate direction");
  if (k.n < 2) throw InputError("shadow: needs n >= 2");
  if (k.n > 4) throw InputError("shadow: voxel experiments are limited to n <= 4");
  if (raster_h > k.h / 2 + 1e-15) throw InputError("shadow: raster_h must be <= h/2");
  if (k.cells.empty()) return ShadowDetail{};

  ShadowScratch scratch;
  rasterize_shadow(k, w / norm, raster_h, scratch);
  return shadow_from_scratch(scratch, k.n - 1, raster_h);
}

double shadow_measure(const VoxelSet& k, const Eigen::VectorXd& w, double raster_h) {
  return shadow_detail(k, w, raster_h).measure;
}

namespace {

struct VoxelKey {
  std::array<int, 4> idx{0, 0, 0, 0};
  bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : k.idx) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

long count_boundary_voxels(const VoxelSet& k) {
  const int n = k.n;
  const auto to_key = [&](const Eigen::VectorXi& cell) {
    VoxelKey key;
    for (int a = 0; a < n; ++a) key.idx[a] = cell[a];
    return key;
  };
  std::unordered_set<VoxelKey, VoxelKeyHash> lookup;
  for (const auto& cell : k.cells) lookup.insert(to_key(cell));
  long boundary = 0;
  for (const auto& cell : k.cells) {
    bool interior = true;
    for (int a = 0; a < n && interior; ++a)
      for (int d : {-1, +1}) {
        Eigen::VectorXi moved = cell;
        moved[a] += d;
        if (!lookup.count(to_key(moved))) {
          interior = false;
          break;
        }
      }
    if (!interior) ++boundary;
  }
  return boundary;
}

}  // namespace

LoomisWhitneyReport loomis_whitney_check(const VoxelSet& k, const DirectionBasis& basis,
                                         double raster_h) {
  if (basis.n() != k.n) throw InputError("loomis_whitney_check: basis dimension mismatch");
  LoomisWhitneyReport report;
  const int n = k.n;
  report.lhs = std::pow(k.measure(), n - 1);

  // the n shadows are independent; evaluate them in parallel and merge in
  // direction order so the report does not depend on the schedule
  report.shadows.resize(n);
  if (worker_threads() > 1 && n > 1) {
    std::vector<std::future<ShadowDetail>> jobs;
    for (int i = 0; i < n; ++i)
      jobs.push_back(std::async(std::launch::async,
                                [&, i] { return shadow_detail(k, basis[i], raster_h); }));
    for (int i = 0; i < n; ++i) report.shadows[i] = jobs[i].get();
  } else {
    for (int i = 0; i < n; ++i) report.shadows[i] = shadow_detail(k, basis[i], raster_h);
  }
  double rhs = 1.0;
  for (int i = 0; i < n; ++i) {
    rhs *= report.shadows[i].measure;
    if (report.shadows[i].measure > 0.0)
      report.raster_tolerance += report.shadows[i].tolerance_abs / report.shadows[i].measure;
  }
  report.rhs = rhs / basis.abs_det();
  report.ratio = report.rhs > 0.0 ? report.lhs / report.rhs : (report.lhs > 0.0 ? -1.0 : 0.0);

  report.boundary_voxels = count_boundary_voxels(k);
  if (!k.cells.empty())
    report.voxel_tolerance =
        2.0 * n * static_cast<double>(report.boundary_voxels) / static_cast<double>(k.cells.size());
  report.tolerance = report.raster_tolerance + report.voxel_tolerance;
  report.holds = report.ratio <= 1.0 + report.tolerance;
  return report;
}

double gram_jacobian(const DirectionBasis& basis, int i) {
  const int n = basis.n();
  if (i < 0 || i >= n) throw InputError("gram_jacobian: index out of range");
  const Eigen::VectorXd& wi = basis[i];
  Eigen::MatrixXd projected(n, n - 1);
  int c = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    projected.col(c++) = basis[j] - wi.dot(basis[j]) * wi;
  }
  const Eigen::MatrixXd gram = projected.transpose() * projected;
  const double j_i = std::sqrt(std::max(gram.determinant(), 0.0));
  if (std::abs(j_i - basis.abs_det()) > 1e-10)
    throw InputError("gram_jacobian: identity with |det| failed (degenerate basis?)");
  return j_i;
}

GagliardoReport gagliardo_product_bound(const std::vector<SampledField>& factors) {
  const int n = static_cast<int>(factors.size());
  if (n < 2) throw InputError("gagliardo_product_bound: needs n >= 2 factors");
  for (const auto& f : factors) {
    if (!f.is_scalar()) throw InputError("gagliardo_product_bound: factors must be scalar");
    if (f.n != n - 1)
      throw InputError("gagliardo_product_bound: factors must be (n-1)-dimensional");
    if (std::abs(f.h - factors.front().h) > 1e-12 * factors.front().h)
      throw InputError("gagliardo_product_bound: factors must share the grid pitch");
  }

  // ambient extents: factor i carries the axes j != i in increasing order
  std::vector<int> extents(n, -1);
  extents[1] = factors[0].shape[0];  // f_1 starts at axis 2
  for (int j = 1; j < n - 1; ++j) extents[j + 1] = factors[0].shape[j];
  extents[0] = factors[1].shape[0];
  for (int i = 0; i < n; ++i) {
    int c = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (factors[i].shape[c] != extents[j])
        throw InputError("gagliardo_product_bound: inconsistent factor extents");
      ++c;
    }
  }

  GagliardoReport report;
  const double h = factors.front().h;
  for (const auto& f : factors)
    for (double v : f.values)
      if (v < 0.0) report.used_absolute_values = true;

  // integral of the product of the lifted factors
  std::size_t ambient_cells = 1;
  for (int e : extents) ambient_cells *= static_cast<std::size_t>(e);
  std::vector<double> terms;
  terms.reserve(ambient_cells);
  std::vector<int> idx(n, 0);
  std::vector<int> proj(n - 1, 0);
  const double cell = std::pow(h, n);
  for (std::size_t flat = 0; flat < ambient_cells; ++flat) {
    double prod = cell;
    for (int i = 0; i < n && prod != 0.0; ++i) {
      int c = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) proj[c++] = idx[j];
      prod *= std::abs(factors[i].at(factors[i].flatten(proj)));
    }
    terms.push_back(prod);
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < extents[a]) break;
      idx[a] = 0;
    }
  }
  report.integral = nonzero_pairwise_sum(terms);

  double bound = 1.0;
  const double face_cell = std::pow(h, n - 1);
  for (const auto& f : factors) {
    std::vector<double> mass(f.values.size());
    for (std::size_t c = 0; c < mass.size(); ++c)
      mass[c] = std::pow(std::abs(f.values[c]), n - 1) * face_cell;
    bound *= std::pow(nonzero_pairwise_sum(mass), 1.0 / (n - 1));
  }
  report.bound = bound;
  report.holds = report.integral <= bound * (1.0 + 1e-10);
  return report;
}

}  // namespace clab
