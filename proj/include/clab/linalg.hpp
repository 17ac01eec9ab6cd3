#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace clab {

/// Thrown on malformed or dimensionally inconsistent inputs.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular values below kRankTol * sigma_max are treated as zero in every
/// rank/subspace computation of this library.
inline constexpr double kRankTol = 1e-9;

/// Sum of a sequence with a fixed pairwise reduction tree. The tree shape
/// depends only on the length, so results are reproducible regardless of
/// how the terms were produced.
double pairwise_sum(std::span<const double> xs);

/// Pairwise sum of the nonzero entries only, in order. Exact zeros carry no
/// information and skipping them keeps the reduction tree identical when a
/// field is translated by whole cells inside its grid.
double nonzero_pairwise_sum(std::span<const double> xs);

/// Deterministic pseudo-random stream (xorshift-based, platform independent).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in (0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

  Eigen::VectorXd normal_vector(int dim);
  /// Uniform point on the unit sphere of the given dimension.
  Eigen::VectorXd unit_vector(int dim);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// k-th point of the Halton sequence in the given base (k >= 1).
double halton(std::uint64_t index, std::uint32_t base);

/// count low-discrepancy points on the unit sphere S^{dim-1}: Halton points
/// mapped through Box-Muller and normalized. Deterministic.
std::vector<Eigen::VectorXd> sphere_low_discrepancy(int dim, int count);

/// Derivative-free minimization of f over the unit sphere starting from x0:
/// coordinate moves projected back to the sphere with step halving.
/// Runs at least min_steps improvement sweeps.
Eigen::VectorXd sphere_descent(const std::function<double(const Eigen::VectorXd&)>& f,
                               Eigen::VectorXd x0, int min_steps = 50);

/// Orthonormal basis of the column space of m, truncating singular values
/// below rank_tol * sigma_max. Returns an ambient x rank matrix (rank may be
/// zero).
Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rank_tol = kRankTol);

/// Orthonormal basis of the null space of m (right null vectors).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rank_tol = kRankTol);

/// Numerical rank with the library-wide relative tolerance.
int numeric_rank(const Eigen::MatrixXd& m, double rank_tol = kRankTol);

/// Worker-thread cap from CANCELING_LAB_THREADS (defaults to a small
/// hardware-based value; always >= 1). Parallel sections stay deterministic
/// by merging results in a fixed order.
int worker_threads();

}  // namespace clab
