#pragma once

#include <string>
#include <vector>

#include "clab/linalg.hpp"

namespace clab {

/// Symbol of a first-order homogeneous constant-coefficient operator:
/// A(xi) = sum_k xi_k A_k, each A_k a dimE x dimV matrix.
struct OperatorSymbol {
  int n = 0;
  int dimV = 0;
  int dimE = 0;
  std::vector<Eigen::MatrixXd> coeff;  // coeff[k] is A_{k+1}

  OperatorSymbol() = default;
  OperatorSymbol(int n, int dimV, int dimE, std::vector<Eigen::MatrixXd> coeff);

  bool is_zero() const;
  /// Frobenius norm of the stacked coefficient tensor.
  double coeff_norm() const;
};

/// A(xi) as a dimE x dimV matrix.
Eigen::MatrixXd symbol_eval(const OperatorSymbol& a, const Eigen::VectorXd& xi);

/// Gradient of a scalar: V = R, E = R^n, A(xi) v = xi v.
OperatorSymbol gradient_operator(int n);

/// Symmetric gradient of a vector field stored in the isometric coordinates
/// of Sym(n): diagonal entries first, then sqrt(2) * m_ij for i < j, so the
/// Euclidean norm on E equals the Frobenius norm of the tensor.
OperatorSymbol deformation_operator(int n);

/// Cauchy-Riemann system on the plane: A(xi) = [[xi1, -xi2], [xi2, xi1]].
OperatorSymbol cauchy_riemann_operator();

/// d/dx_1 acting on scalars in n variables (non-elliptic for n >= 2).
OperatorSymbol partial_x1_operator(int n);

/// Resolve one of the named presets above ("gradient", "deformation",
/// "cauchy_riemann", "partial_x1"); throws InputError on unknown names.
OperatorSymbol operator_preset(const std::string& name, int n);

}  // namespace clab
