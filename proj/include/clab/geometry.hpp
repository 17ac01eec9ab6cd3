#pragma once

#include "clab/field.hpp"
#include "clab/voxel.hpp"

namespace clab {

/// Rasterized shadow of a voxel set on w^perp: a raster cell of pitch
/// raster_h counts when its center lies in the projection of some voxel
/// (decided exactly by a ray/box test along w). `boundary_cells` counts the
/// raster cells whose corners disagree with their center, an explicit error
/// budget of the rasterization.
struct ShadowDetail {
  double measure = 0.0;
  long covered_cells = 0;
  long boundary_cells = 0;
  double tolerance_abs = 0.0;  // boundary_cells * raster_h^{n-1}
};

ShadowDetail shadow_detail(const VoxelSet& k, const Eigen::VectorXd& w, double raster_h);

/// H^{n-1} of the orthogonal projection of K on w^perp, up to rasterization.
double shadow_measure(const VoxelSet& k, const Eigen::VectorXd& w, double raster_h);

/// lhs = L^n(K)^{n-1} against rhs = prod_i shadow_i / |det(w_1..w_n)|.
/// The inequality lhs <= rhs holds up to the reported tolerance, which
/// combines the raster error of each shadow with the voxel boundary count.
struct LoomisWhitneyReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double raster_tolerance = 0.0;  // relative, summed over the n shadows
  double voxel_tolerance = 0.0;   // relative, from the voxel boundary count
  double tolerance = 0.0;
  long boundary_voxels = 0;
  std::vector<ShadowDetail> shadows;
  bool holds = false;  // ratio <= 1 + tolerance
};

LoomisWhitneyReport loomis_whitney_check(const VoxelSet& k, const DirectionBasis& basis,
                                         double raster_h);

/// J_i = sqrt(det Gram{ P_i w_j : j != i }), asserted equal to
/// |det(w_1..w_n)| to 1e-10 (the Schur-complement identity).
double gram_jacobian(const DirectionBasis& basis, int i);

/// integral of prod_i f_i(P_i z) over the n-dimensional grid against the
/// product of the L^{n-1} masses. Signed inputs are absolute-valued and
/// noted in the report.
struct GagliardoReport {
  double integral = 0.0;
  double bound = 0.0;
  bool holds = false;  // integral <= bound (1 + 1e-10)
  bool used_absolute_values = false;
};

GagliardoReport gagliardo_product_bound(const std::vector<SampledField>& factors);

}  // namespace clab
