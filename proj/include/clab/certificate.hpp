#pragma once

#include <optional>

#include "clab/classify.hpp"

namespace clab {

/// Thrown when the seeded certificate search exhausts its budget. Carries
/// the step it was stuck at; either the operator is not (n-1)-canceling or
/// the sample budget was unlucky.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, int stuck_step)
      : std::runtime_error(what), stuck_step_(stuck_step) {}
  int stuck_step() const { return stuck_step_; }

 private:
  int stuck_step_ = 0;
};

/// One block produced for a single direction v* in V \ {0}: frequencies
/// xi_i, directions w_i and covectors e_i with
///   (i)   w_1..w_n linearly independent,
///   (ii)  <e_i, A(xi_i) v*> = 1,
///   (iii) <xi_i, w_i> = 1,
///   (iv)  <e_i, A(xi) v> = <xi, w_i> <A(xi_i)^T e_i, v>  for all xi, v.
struct DirectionBlock {
  std::vector<Eigen::VectorXd> xi;
  std::vector<Eigen::VectorXd> w;
  std::vector<Eigen::VectorXd> e;
};

/// Builds a DirectionBlock for v_star by the inductive hyperplane search:
/// at each step xi is drawn deterministically orthogonal to the w chosen so
/// far, then seeded hyperplanes W are sampled until A(xi) v* escapes
/// span{A(xi')v : xi' in W}. prior_w seeds the induction (normally empty).
DirectionBlock vectors_1dir(const OperatorSymbol& a, const Eigen::VectorXd& v_star,
                            const std::vector<Eigen::VectorXd>& prior_w = {},
                            std::uint64_t seed = 1, int budget = 256);

/// Certificate families (w_i^j, v_i^j, e_i^j), j <= m, realizing the
/// factorization <w_i^j, xi><v_i^j, v> = <e_i^j, A(xi) v>.
struct CancelingCertificate {
  int m = 0;
  // indexed [j][i], j block, i direction
  std::vector<std::vector<Eigen::VectorXd>> w;
  std::vector<std::vector<Eigen::VectorXd>> v;
  std::vector<std::vector<Eigen::VectorXd>> e;
  std::vector<std::vector<Eigen::VectorXd>> xi;  // retained for audit
  std::uint64_t seed = 0;
  int budget = 0;
};

/// Snapshot of the arrangement chain X_0 > X_1 > ... taken while a
/// certificate is built; strictly decreasing in (max_dim, count_at_max_dim).
struct ChainStep {
  int max_dim = 0;
  int count_at_max_dim = 0;
};

/// Runs the descending-chain construction: X_0 = {V}; while some nonzero
/// v* survives, append the block for v*, set v_i = A(xi_i)^T e_i and cut
/// X by the union of the (v_i)^perp. Requires an elliptic and
/// (n-1)-canceling operator (sampled verdicts are checked first).
CancelingCertificate construct_certificate(const OperatorSymbol& a, std::uint64_t seed = 1,
                                           int budget = 256);

/// The chain profile observed during construction (for diagnostics/tests).
std::vector<ChainStep> certificate_chain_profile(const OperatorSymbol& a,
                                                 const CancelingCertificate& c);

/// Sampled-plus-descent lower bound for
///   gamma(v) = max_j min_i |<v_i^j, v>|  over unit v,
/// together with the exact arrangement check that the (v_i^j)^perp unions
/// intersect to {0}.
struct GammaBound {
  double value = 0.0;
  bool arrangement_reaches_zero = false;
  Eigen::VectorXd arg_min;
};

GammaBound gamma_lower_bound(const std::vector<std::vector<Eigen::VectorXd>>& v_families,
                             int sphere_samples = 10000);

/// Residuals and margins of the certificate identities.
struct CertificateReport {
  double identity_residual = 0.0;                // max over canonical (xi, v) pairs
  std::vector<double> independence_margins;      // |det(w_1^j .. w_n^j)| per j
  double gamma_bound = 0.0;
  bool arrangement_reaches_zero = false;
  double identity_tol = 1e-10;
  double independence_tol = 1e-8;

  bool pass() const;
};

CertificateReport verify_certificate(const OperatorSymbol& a, const CancelingCertificate& c);

/// True iff every subset of the list either spans the ambient space or is
/// linearly independent. Refuses lists longer than 20 entries.
bool maximally_linearly_independent(const std::vector<Eigen::VectorXd>& vectors);

/// First index subset that is neither independent nor spanning, or nullopt
/// when the list is maximally linearly independent.
std::optional<std::vector<int>> mli_offending_subset(const std::vector<Eigen::VectorXd>& vectors);

}  // namespace clab
