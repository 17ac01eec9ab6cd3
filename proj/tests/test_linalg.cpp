#include <doctest.h>

#include <cmath>
#include <numeric>

#include "clab/linalg.hpp"

using namespace clab;

TEST_CASE("pairwise_sum matches sequential on benign data") {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 1.0 / static_cast<double>(i + 1);
  const double seq = std::accumulate(xs.begin(), xs.end(), 0.0);
  CHECK(pairwise_sum(xs) == doctest::Approx(seq).epsilon(1e-14));
}

TEST_CASE("nonzero_pairwise_sum is invariant under zero padding") {
  std::vector<double> xs = {0.1, 0.7, 0.3, 1e-3, 0.9};
  std::vector<double> padded;
  padded.insert(padded.end(), 17, 0.0);
  for (double x : xs) {
    padded.push_back(x);
    padded.insert(padded.end(), 3, 0.0);
  }
  CHECK(nonzero_pairwise_sum(xs) == nonzero_pairwise_sum(padded));
}

TEST_CASE("rng streams are deterministic and roughly standard") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(7);
  double mean = 0.0, var = 0.0;
  const int count = 20000;
  std::vector<double> draws(count);
  for (auto& d : draws) d = c.normal();
  for (double d : draws) mean += d;
  mean /= count;
  for (double d : draws) var += (d - mean) * (d - mean);
  var /= count;
  CHECK(std::abs(mean) < 0.05);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("halton radical inverse") {
  CHECK(halton(1, 2) == doctest::Approx(0.5));
  CHECK(halton(2, 2) == doctest::Approx(0.25));
  CHECK(halton(3, 2) == doctest::Approx(0.75));
  CHECK(halton(1, 3) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("sphere points are unit and cover directions") {
  for (int dim : {2, 3, 4}) {
    const auto pts = sphere_low_discrepancy(dim, 500);
    CHECK(pts.size() == 500);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (const auto& p : pts) {
      CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
      mean += p;
    }
    CHECK(mean.norm() / 500.0 < 0.1);  // roughly balanced
  }
}

TEST_CASE("sphere_descent finds the minimum of a linear functional") {
  // min of v[0] over the circle is -1 at (-1, 0)
  const auto f = [](const Eigen::VectorXd& v) { return v[0]; };
  const Eigen::VectorXd x = sphere_descent(f, Eigen::VectorXd::Unit(2, 1), 50);
  CHECK(f(x) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("column and null spaces with rank tolerance") {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 0, 1;  // rank 2
  CHECK(numeric_rank(m) == 2);
  CHECK(column_space(m).cols() == 2);
  const Eigen::MatrixXd nb = null_space(m);
  CHECK(nb.cols() == 1);
  CHECK((m * nb).norm() < 1e-12);
}
