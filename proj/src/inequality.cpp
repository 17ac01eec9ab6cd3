#include "clab/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace clab {

DirectionalFamily::DirectionalFamily(std::vector<std::vector<Eigen::VectorXd>> w_,
                                     std::vector<std::vector<Eigen::VectorXd>> v_)
    : w(std::move(w_)), v(std::move(v_)) {
  if (w.empty() || w.size() != v.size())
    throw InputError("DirectionalFamily: mismatched block counts");
  const int n = static_cast<int>(w.front().front().size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (static_cast<int>(w[j].size()) != n || w[j].size() != v[j].size())
      throw InputError("DirectionalFamily: each block needs n direction/covector pairs");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      if (w[j][i].size() != n) throw InputError("DirectionalFamily: direction dimension");
      m.col(i) = w[j][i];
    }
    double norm_prod = 1.0;
    for (int i = 0; i < n; ++i) norm_prod *= w[j][i].norm();
    if (std::abs(m.determinant()) <= kRankTol * std::max(norm_prod, 1e-300))
      throw InputError("DirectionalFamily: block " + std::to_string(j) +
                       " directions are dependent");
  }
  const GammaBound gb = gamma_lower_bound(v);
  if (!gb.arrangement_reaches_zero || gb.value <= 0.0)
    throw InputError("DirectionalFamily: covector families share a kernel direction");
  gamma_ = gb.value;
}

void VerificationReport::finish() {
  if (rhs > 0.0) {
    ratio = lhs / rhs;
    constant_estimate = ratio;
  } else if (lhs == 0.0) {
    degenerate = true;
    ratio = 0.0;
    constant_estimate = 0.0;
  } else {
    anomaly = true;  // nonzero mass with a vanishing bound side
    ratio = std::numeric_limits<double>::infinity();
    constant_estimate = ratio;
  }
}

namespace {

double lorentz_lhs(const SampledField& u) {
  const double n = u.n;
  return lorentz_norm(u, n / (n - 1.0), 1.0);
}

void stamp(VerificationReport& report, const SampledField& u, std::string case_id) {
  report.case_id = std::move(case_id);
  report.h = u.h;
  report.shape = u.shape;
}

}  // namespace

VerificationReport verify_directional_theorem(const SampledField& u,
                                              const DirectionalFamily& family) {
  if (u.n < 2) throw InputError("verify_directional_theorem: needs n >= 2");
  VerificationReport report;
  stamp(report, u, "directional");
  report.gamma_bound = family.gamma();
  report.lhs = lorentz_lhs(u);

  std::vector<double> block_terms;
  for (int j = 0; j < family.blocks(); ++j) {
    double prod = 1.0;
    for (std::size_t i = 0; i < family.w[j].size(); ++i)
      prod *= std::pow(directional_derivative_l1(u, family.w[j][i], family.v[j][i]),
                       1.0 / static_cast<double>(u.n));
    block_terms.push_back(prod);
  }
  report.rhs = pairwise_sum(block_terms);
  report.finish();
  return report;
}

VerificationReport verify_alvino(const SampledField& u) {
  if (!u.is_scalar()) throw InputError("verify_alvino: scalar fields only");
  if (u.n < 2) throw InputError("verify_alvino: needs n >= 2");
  VerificationReport report;
  stamp(report, u, "alvino");
  report.lhs = lorentz_lhs(u);
  // the gradient symbol keeps this path bit-identical with the certificate
  // route for the gradient operator
  report.rhs = field_l1(apply_operator(gradient_operator(u.n), u));
  report.finish();
  return report;
}

VerificationReport verify_korn_sobolev(const SampledField& u) {
  if (u.dimV != u.n) throw InputError("verify_korn_sobolev: needs an R^n-valued field");
  if (u.n < 2) throw InputError("verify_korn_sobolev: needs n >= 2");
  if (!u.support_flag) throw InputError("verify_korn_sobolev: field must be compactly supported");
  VerificationReport report;
  stamp(report, u, "korn_sobolev");
  report.lhs = lorentz_lhs(u);

  const double cell = u.cell_measure();
  std::vector<double> terms(u.cells());
  Eigen::MatrixXd du(u.n, u.n);
  for (std::size_t c = 0; c < u.cells(); ++c) {
    for (int k = 0; k < u.n; ++k)
      for (int comp = 0; comp < u.n; ++comp) du(k, comp) = central_difference(u, c, k, comp);
    const Eigen::MatrixXd strain = 0.5 * (du + du.transpose());
    terms[c] = strain.norm() * cell;
  }
  report.rhs = nonzero_pairwise_sum(terms);
  report.finish();
  return report;
}

DirectionalFamily de_figueiredo_expand(const std::vector<Eigen::VectorXd>& w,
                                       const std::vector<Eigen::VectorXd>& v) {
  if (w.empty() || w.size() != v.size())
    throw InputError("de_figueiredo_expand: need equally many directions and covectors");
  const int n = static_cast<int>(w.front().size());
  const int m = static_cast<int>(v.front().size());
  if (static_cast<int>(w.size()) != n + m - 1)
    throw InputError("de_figueiredo_expand: expected n + m - 1 vectors");

  const auto offending_w = mli_offending_subset(w);
  const auto offending_v = mli_offending_subset(v);
  if (offending_w || offending_v) {
    std::ostringstream msg;
    msg << "de_figueiredo_expand: subset {";
    const auto& bad = offending_w ? *offending_w : *offending_v;
    for (std::size_t i = 0; i < bad.size(); ++i) msg << (i ? "," : "") << bad[i];
    msg << "} of the " << (offending_w ? "directions" : "covectors")
        << " is neither independent nor spanning";
    throw InputError(msg.str());
  }

  // all n-subsets 1 <= i_1 < ... < i_n <= n + m - 1
  std::vector<std::vector<Eigen::VectorXd>> fam_w, fam_v;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  const int total = n + m - 1;
  while (true) {
    std::vector<Eigen::VectorXd> block_w, block_v;
    for (int i : pick) {
      block_w.push_back(w[i]);
      block_v.push_back(v[i]);
    }
    fam_w.push_back(std::move(block_w));
    fam_v.push_back(std::move(block_v));

    int k = n - 1;
    while (k >= 0 && pick[k] == total - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int i = k + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  return DirectionalFamily(std::move(fam_w), std::move(fam_v));
}

CertificateInequalityReport verify_certificate_inequality(const OperatorSymbol& a,
                                                          const CancelingCertificate& cert,
                                                          const SampledField& u) {
  if (u.dimV != a.dimV) throw InputError("verify_certificate_inequality: field/operator mismatch");
  CertificateInequalityReport report;
  stamp(report, u, "certificate");

  const SampledField adu = apply_operator(a, u);

  // pointwise identity <v, (Du)w> = <e, A(D)u> cell by cell; both sides use
  // the same stencil, so the residual is pure roundoff for a valid certificate
  double scale = 0.0;
  for (std::size_t c = 0; c < adu.cells(); ++c)
    for (int e = 0; e < a.dimE; ++e) scale = std::max(scale, std::abs(adu.at(c, e)));
  scale = std::max(scale, 1e-300);

  Eigen::VectorXd grad(a.dimV);
  for (int j = 0; j < cert.m; ++j)
    for (int i = 0; i < a.n; ++i) {
      const auto& w = cert.w[j][i];
      const auto& v = cert.v[j][i];
      const auto& e = cert.e[j][i];
      const double block_norm = std::max({w.norm() * v.norm(), e.norm(), 1.0});
      for (std::size_t c = 0; c < u.cells(); ++c) {
        double lhs = 0.0;
        for (int k = 0; k < u.n; ++k) {
          if (w[k] == 0.0) continue;
          double dir = 0.0;
          for (int comp = 0; comp < u.dimV; ++comp)
            dir += v[comp] * central_difference(u, c, k, comp);
          lhs += w[k] * dir;
        }
        double rhs = 0.0;
        for (int comp = 0; comp < a.dimE; ++comp) rhs += e[comp] * adu.at(c, comp);
        report.identity_residual =
            std::max(report.identity_residual, std::abs(lhs - rhs) / (scale * block_norm));
      }
    }
  if (report.identity_residual > 1e-8)
    throw VerificationError(
        "verify_certificate_inequality: pointwise identity residual " +
        std::to_string(report.identity_residual) + " exceeds 1e-8 (certificate mismatch)");

  report.lhs = lorentz_lhs(u);
  report.rhs = field_l1(adu);

  // certificate-weighted directional bound
  std::vector<double> block_terms;
  for (int j = 0; j < cert.m; ++j) {
    double prod = 1.0;
    for (int i = 0; i < a.n; ++i) {
      const auto& e = cert.e[j][i];
      std::vector<double> terms(adu.cells());
      for (std::size_t c = 0; c < adu.cells(); ++c) {
        double pairing = 0.0;
        for (int comp = 0; comp < a.dimE; ++comp) pairing += e[comp] * adu.at(c, comp);
        terms[c] = std::abs(pairing) * adu.cell_measure();
      }
      prod *= std::pow(nonzero_pairwise_sum(terms), 1.0 / static_cast<double>(u.n));
    }
    block_terms.push_back(prod);
  }
  report.certificate_rhs = pairwise_sum(block_terms);

  const GammaBound gb = gamma_lower_bound(cert.v);
  report.gamma_bound = gb.value;
  report.finish();
  return report;
}

namespace {

// h^2-weighted count of entries strictly above t in a descending sorted list
double count_above(const std::vector<double>& sorted_desc, double t) {
  // first index with value <= t
  std::size_t lo = 0, hi = sorted_desc.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (sorted_desc[mid] <= t)
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<double>(lo);
}

}  // namespace

PlanarChecksReport planar_checks(const SampledField& u) {
  if (u.n != 2 || u.dimV != 2) throw InputError("planar_checks: needs an R^2 field on the plane");
  if (!u.support_flag) throw InputError("planar_checks: field must be compactly supported");

  PlanarChecksReport report;
  const int rows = u.shape[0], cols = u.shape[1];
  const double h = u.h;

  // (a) superlevel split: |u1| > t forces |u1 + u2| > t or |u1 - u2| > t
  std::vector<double> m1, m_plus, m_minus;
  m1.reserve(u.cells());
  m_plus.reserve(u.cells());
  m_minus.reserve(u.cells());
  for (std::size_t c = 0; c < u.cells(); ++c) {
    const double u1 = u.at(c, 0), u2 = u.at(c, 1);
    m1.push_back(std::abs(u1));
    m_plus.push_back(std::min(std::abs(u1), std::abs(u1 + u2)));
    m_minus.push_back(std::min(std::abs(u1), std::abs(u1 - u2)));
  }
  std::sort(m1.begin(), m1.end(), std::greater<double>());
  std::sort(m_plus.begin(), m_plus.end(), std::greater<double>());
  std::sort(m_minus.begin(), m_minus.end(), std::greater<double>());
  report.a_max_violation = 0.0;
  for (std::size_t i = 0; i < m1.size() && m1[i] > 0.0;) {
    const double t = m1[i];
    const double lhs = std::sqrt(count_above(m1, t) * h * h);
    const double rhs =
        std::sqrt(count_above(m_plus, t) * h * h) + std::sqrt(count_above(m_minus, t) * h * h);
    report.a_max_violation = std::max(report.a_max_violation, lhs - rhs);
    while (i < m1.size() && m1[i] == t) ++i;
  }
  report.a_holds = report.a_max_violation <= 1e-12;

  // helpers for (b) and (c)
  const auto at2 = [&](int i, int j, int comp) {
    return u.at(static_cast<std::size_t>(i) * cols + j, comp);
  };
  const auto strain_sum = [&](std::size_t c) {
    // d1 u1 + d2 u2 + d2 u1 + d1 u2
    return central_difference(u, c, 0, 0) + central_difference(u, c, 1, 1) +
           central_difference(u, c, 1, 0) + central_difference(u, c, 0, 1);
  };

  // (b) diagonals x1 - x2 = const: sup of |u1 + u2| integrated in the
  // diagonal parameter, against the L1 mass of the paired strain derivative
  {
    std::vector<double> diag_sup;
    std::vector<double> diag_sup_deriv;
    for (int d = -(cols - 1); d <= rows - 1; ++d) {
      double sup = 0.0, sup_deriv = 0.0;
      for (int i = std::max(0, d); i < rows && i - d < cols; ++i) {
        const int j = i - d;
        const std::size_t c = static_cast<std::size_t>(i) * cols + j;
        sup = std::max(sup, std::abs(at2(i, j, 0) + at2(i, j, 1)));
        sup_deriv = std::max(sup_deriv, std::abs(strain_sum(c)));
      }
      diag_sup.push_back(sup);
      diag_sup_deriv.push_back(sup_deriv);
    }
    report.b_lhs = h * nonzero_pairwise_sum(diag_sup);
    std::vector<double> terms(u.cells());
    for (std::size_t c = 0; c < u.cells(); ++c) terms[c] = std::abs(strain_sum(c)) * h * h;
    report.b_rhs = nonzero_pairwise_sum(terms);
    report.b_slack = 4.0 * h * (h * nonzero_pairwise_sum(diag_sup_deriv));
    report.b_holds = report.b_lhs <= report.b_rhs + report.b_slack;
  }

  // (c) columns: sup over x2 of |u1| integrated in x1 against |d2 u1|
  {
    std::vector<double> col_sup(rows, 0.0), col_sup_deriv(rows, 0.0);
    std::vector<double> terms(u.cells());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const std::size_t c = static_cast<std::size_t>(i) * cols + j;
        col_sup[i] = std::max(col_sup[i], std::abs(at2(i, j, 0)));
        const double d2u1 = central_difference(u, c, 1, 0);
        col_sup_deriv[i] = std::max(col_sup_deriv[i], std::abs(d2u1));
        terms[c] = std::abs(d2u1) * h * h;
      }
    report.c_lhs = h * nonzero_pairwise_sum(col_sup);
    report.c_rhs = nonzero_pairwise_sum(terms);
    report.c_slack = 4.0 * h * (h * nonzero_pairwise_sum(col_sup_deriv));
    report.c_holds = report.c_lhs <= report.c_rhs + report.c_slack;
  }

  report.holds = report.a_holds && report.b_holds && report.c_holds;
  return report;
}

}  // namespace clab
