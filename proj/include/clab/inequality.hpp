#pragma once

#include <optional>
#include <string>

#include "clab/certificate.hpp"
#include "clab/differential.hpp"
#include "clab/rearrangement.hpp"

namespace clab {

/// Thrown when a verification-side consistency check fails (for example the
/// certificate/discretization pointwise identity).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Family (w_i^j, v_i^j) entering the directional-derivative estimate:
/// per block the directions are linearly independent and the covector
/// families leave no common kernel direction.
struct DirectionalFamily {
  // indexed [j][i]
  std::vector<std::vector<Eigen::VectorXd>> w;
  std::vector<std::vector<Eigen::VectorXd>> v;

  DirectionalFamily(std::vector<std::vector<Eigen::VectorXd>> w,
                    std::vector<std::vector<Eigen::VectorXd>> v);

  int blocks() const { return static_cast<int>(w.size()); }
  double gamma() const { return gamma_; }

 private:
  double gamma_ = 0.0;
};

/// One verification row: lhs <= C rhs with the measured ratio. Degenerate
/// 0/0 rows are flagged, a nonzero lhs over a vanishing rhs is an anomaly
/// (it would contradict the theorem and points at a discretization bug).
struct VerificationReport {
  std::string case_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double constant_estimate = 0.0;
  bool degenerate = false;
  bool anomaly = false;
  double h = 0.0;
  std::vector<int> shape;
  std::uint64_t seed = 0;
  GeneratorParams params;
  double gamma_bound = 0.0;  // family-dependent checks record gamma here

  void finish();  // fills ratio/flags from lhs, rhs
};

/// lhs = |u| in L^{n/(n-1),1}; rhs = sum_j prod_i |<v_i^j, Du[w_i^j]>|_1^{1/n}.
VerificationReport verify_directional_theorem(const SampledField& u,
                                              const DirectionalFamily& family);

/// lhs as above; rhs = |Du|_1 through the gradient symbol (scalar fields).
VerificationReport verify_alvino(const SampledField& u);

/// lhs as above on R^n-valued u; rhs = |Eu|_1, Frobenius of (Du + Du^T)/2.
VerificationReport verify_korn_sobolev(const SampledField& u);

/// Expands n+m-1 maximally linearly independent directions/covectors into
/// the C(n+m-1, n) block family of the sparse directional estimate.
DirectionalFamily de_figueiredo_expand(const std::vector<Eigen::VectorXd>& w,
                                       const std::vector<Eigen::VectorXd>& v);

/// Checks the pointwise factorization <v_i^j, Du[w_i^j]> = <e_i^j, A(D)u>
/// on the grid (same stencil on both sides, tolerance 1e-8), then reports
/// lhs = |u|_{n/(n-1),1} against rhs = |A(D)u|_1. `certificate_rhs` carries
/// the directional bound sum_j prod_i |<e_i^j, A(D)u>|_1^{1/n}.
struct CertificateInequalityReport : VerificationReport {
  double identity_residual = 0.0;
  double certificate_rhs = 0.0;
};

CertificateInequalityReport verify_certificate_inequality(const OperatorSymbol& a,
                                                          const CancelingCertificate& cert,
                                                          const SampledField& u);

/// The planar two-piece mechanics on R^2-valued fields:
///  (a) sqrt-subadditive superlevel split across |u1 +- u2| (exact on grids),
///  (b) diagonal sup integral of |u1 + u2| against the strain derivative,
///  (c) column sup integral of |u1| against |d2 u1|.
struct PlanarChecksReport {
  double a_max_violation = 0.0;  // <= 0 when (a) holds at every threshold
  bool a_holds = false;
  double b_lhs = 0.0, b_rhs = 0.0, b_slack = 0.0;
  bool b_holds = false;
  double c_lhs = 0.0, c_rhs = 0.0, c_slack = 0.0;
  bool c_holds = false;
  bool holds = false;
};

PlanarChecksReport planar_checks(const SampledField& u);

}  // namespace clab
