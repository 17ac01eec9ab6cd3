#include "clab/operator_symbol.hpp"

#include <cmath>

namespace clab {

OperatorSymbol::OperatorSymbol(int n_, int dimV_, int dimE_, std::vector<Eigen::MatrixXd> coeff_)
    : n(n_), dimV(dimV_), dimE(dimE_), coeff(std::move(coeff_)) {
  if (n < 1 || dimV < 1 || dimE < 1) throw InputError("OperatorSymbol: dimensions must be >= 1");
  if (static_cast<int>(coeff.size()) != n)
    throw InputError("OperatorSymbol: expected one coefficient matrix per variable");
  for (const auto& m : coeff)
    if (m.rows() != dimE || m.cols() != dimV)
      throw InputError("OperatorSymbol: coefficient matrix shape mismatch");
}

bool OperatorSymbol::is_zero() const {
  for (const auto& m : coeff)
    if (m.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

double OperatorSymbol::coeff_norm() const {
  double sq = 0.0;
  for (const auto& m : coeff) sq += m.squaredNorm();
  return std::sqrt(sq);
}

Eigen::MatrixXd symbol_eval(const OperatorSymbol& a, const Eigen::VectorXd& xi) {
  if (xi.size() != a.n) throw InputError("symbol_eval: frequency dimension mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.dimE, a.dimV);
  for (int k = 0; k < a.n; ++k) m += xi[k] * a.coeff[k];
  return m;
}

OperatorSymbol gradient_operator(int n) {
  std::vector<Eigen::MatrixXd> coeff(n);
  for (int k = 0; k < n; ++k) {
    coeff[k] = Eigen::MatrixXd::Zero(n, 1);
    coeff[k](k, 0) = 1.0;
  }
  return OperatorSymbol(n, 1, n, std::move(coeff));
}

OperatorSymbol deformation_operator(int n) {
  const int dimE = n * (n + 1) / 2;
  // component order: (1,1) .. (n,n), then (1,2), (1,3), ..., (n-1,n)
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) slots.emplace_back(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  const double rt2 = std::sqrt(2.0);
  std::vector<Eigen::MatrixXd> coeff(n, Eigen::MatrixXd::Zero(dimE, n));
  // E(u)_{ij} = (d_i u_j + d_j u_i) / 2; coefficient of d_k u_v in slot (i,j)
  for (int s = 0; s < dimE; ++s) {
    const auto [i, j] = slots[s];
    const double scale = (i == j) ? 1.0 : rt2;
    // d_i u_j contributes 1/2, d_j u_i contributes 1/2 (coincide when i == j)
    coeff[i](s, j) += scale * 0.5;
    coeff[j](s, i) += scale * 0.5;
  }
  return OperatorSymbol(n, n, dimE, std::move(coeff));
}

OperatorSymbol cauchy_riemann_operator() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, 1;
  a2 << 0, -1, 1, 0;
  return OperatorSymbol(2, 2, 2, {a1, a2});
}

OperatorSymbol partial_x1_operator(int n) {
  std::vector<Eigen::MatrixXd> coeff(n, Eigen::MatrixXd::Zero(1, 1));
  coeff[0](0, 0) = 1.0;
  return OperatorSymbol(n, 1, 1, std::move(coeff));
}

OperatorSymbol operator_preset(const std::string& name, int n) {
  if (name == "gradient") return gradient_operator(n);
  if (name == "deformation") return deformation_operator(n);
  if (name == "cauchy_riemann") {
    if (n != 2) throw InputError("cauchy_riemann preset is planar (n = 2)");
    return cauchy_riemann_operator();
  }
  if (name == "partial_x1") return partial_x1_operator(n);
  throw InputError("unknown operator preset: " + name);
}

}  // namespace clab
