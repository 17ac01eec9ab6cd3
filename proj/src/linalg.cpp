#include "clab/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace clab {

namespace {

double pairwise_sum_impl(const double* xs, std::size_t count) {
  if (count <= 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, count - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_impl(xs.data(), xs.size());
}

double nonzero_pairwise_sum(std::span<const double> xs) {
  std::vector<double> compact;
  compact.reserve(xs.size());
  for (double x : xs)
    if (x != 0.0) compact.push_back(x);
  return pairwise_sum_impl(compact.data(), compact.size());
}

Rng::Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

std::uint64_t Rng::next_u64() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53 mantissa bits, shifted into (0,1)
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return u == 0.0 ? 0x1.0p-54 : u;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Eigen::VectorXd Rng::normal_vector(int dim) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal();
  return v;
}

Eigen::VectorXd Rng::unit_vector(int dim) {
  Eigen::VectorXd v = normal_vector(dim);
  double norm = v.norm();
  while (norm < 1e-12) {
    v = normal_vector(dim);
    norm = v.norm();
  }
  return v / norm;
}

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<Eigen::VectorXd> sphere_low_discrepancy(int dim, int count) {
  if (dim < 1 || count < 1) throw InputError("sphere_low_discrepancy: bad arguments");
  static constexpr std::uint32_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                             23, 29, 31, 37, 41, 43, 47, 53};
  const int pairs = (dim + 1) / 2;
  if (2 * pairs > static_cast<int>(std::size(primes)))
    throw InputError("sphere_low_discrepancy: dimension too large");
  std::vector<Eigen::VectorXd> points;
  points.reserve(count);
  for (int k = 1; points.size() < static_cast<std::size_t>(count); ++k) {
    Eigen::VectorXd v(dim);
    for (int p = 0; p < pairs; ++p) {
      const double u1 = std::max(halton(k, primes[2 * p]), 0x1.0p-54);
      const double u2 = halton(k, primes[2 * p + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double a = 2.0 * std::numbers::pi * u2;
      v[2 * p] = r * std::cos(a);
      if (2 * p + 1 < dim) v[2 * p + 1] = r * std::sin(a);
    }
    const double norm = v.norm();
    if (norm < 1e-9) continue;
    points.push_back(v / norm);
  }
  return points;
}

Eigen::VectorXd sphere_descent(const std::function<double(const Eigen::VectorXd&)>& f,
                               Eigen::VectorXd x0, int min_steps) {
  const int dim = static_cast<int>(x0.size());
  x0.normalize();
  double best = f(x0);
  double step = 0.1;
  int sweeps = 0;
  while (sweeps < min_steps || step > 1e-12) {
    bool improved = false;
    for (int k = 0; k < dim; ++k) {
      for (double sign : {+1.0, -1.0}) {
        Eigen::VectorXd cand = x0;
        cand[k] += sign * step;
        const double norm = cand.norm();
        if (norm < 1e-12) continue;
        cand /= norm;
        const double val = f(cand);
        if (val < best) {
          best = val;
          x0 = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    ++sweeps;
    if (sweeps > 10000) break;
  }
  return x0;
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rank_tol * sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff && sv[i] > 0.0) ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.cols() == 0) return Eigen::MatrixXd(0, 0);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rank_tol * sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff && sv[i] > 0.0) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int numeric_rank(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rank_tol * sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff && sv[i] > 0.0) ++rank;
  return rank;
}

int worker_threads() {
  static const int cached = [] {
    if (const char* env = std::getenv("CANCELING_LAB_THREADS")) {
      const int parsed = std::atoi(env);
      if (parsed >= 1) return std::min(parsed, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
  }();
  return cached;
}

}  // namespace clab
