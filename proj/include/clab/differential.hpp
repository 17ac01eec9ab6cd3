#pragma once

#include "clab/field.hpp"
#include "clab/operator_symbol.hpp"

namespace clab {

/// Central difference of component `comp` along `axis` at `cell`; one-sided
/// on the boundary layer (which compactly supported fields keep at zero).
double central_difference(const SampledField& u, std::size_t cell, int axis, int comp);

/// A(D)u on the grid: sum_k A_k (d_k u) per cell, central differences.
/// Requires a compactly supported field (support_flag).
SampledField apply_operator(const OperatorSymbol& a, const SampledField& u);

/// L1 mass of <v, (Du) w> over the grid, the right-hand-side factor of the
/// directional-derivative estimates. Uses the same stencil as apply_operator
/// so pointwise identities survive discretization exactly.
double directional_derivative_l1(const SampledField& u, const Eigen::VectorXd& w,
                                 const Eigen::VectorXd& v);

/// L1 norm of the pointwise Euclidean magnitude: sum |u(x)| h^n.
double field_l1(const SampledField& u);

}  // namespace clab
