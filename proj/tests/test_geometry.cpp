#include <doctest.h>

#include <cmath>

#include "clab/geometry.hpp"

using namespace clab;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

DirectionBasis canonical_basis(int n) {
  std::vector<Eigen::VectorXd> w;
  for (int i = 0; i < n; ++i) w.push_back(Eigen::VectorXd::Unit(n, i));
  return DirectionBasis(w);
}

}  // namespace

TEST_CASE("voxel sets: measure and generators") {
  const auto cube = VoxelSet::cube(2, 1.0, 1);
  CHECK(cube.measure() == 1.0);
  CHECK(VoxelSet::cube(3, 0.5, 4).measure() == doctest::Approx(8.0));

  const auto disk = VoxelSet::ball(2, 1.0 / 64, 1.0);
  CHECK(disk.measure() == doctest::Approx(M_PI).epsilon(0.01));

  Eigen::MatrixXd span(2, 2);
  span << 1, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  const auto par = VoxelSet::parallelepiped(2, 1.0 / 64, span);
  CHECK(par.measure() == doctest::Approx(std::abs(span.determinant())).epsilon(0.02));
}

TEST_CASE("direction basis invariants") {
  CHECK_THROWS_AS(DirectionBasis({vec2(1, 0), vec2(2, 0)}), InputError);  // not unit
  CHECK_THROWS_AS(DirectionBasis({vec2(1, 0), vec2(1, 0)}), InputError);  // degenerate
  const DirectionBasis diag({vec2(1, 0), vec2(1 / std::sqrt(2.0), 1 / std::sqrt(2.0))});
  CHECK(diag.abs_det() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("shadow_measure: unit segment, diagonal, empty set") {
  const auto square = VoxelSet::cube(2, 1.0, 1);
  CHECK(shadow_measure(square, vec2(1, 0), 0.25) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shadow_measure(square, vec2(0, 1), 0.5) == doctest::Approx(1.0).epsilon(1e-12));

  // diagonal shadow of the unit square is sqrt(2) by hand geometry
  const double diag = shadow_measure(square, vec2(1, 1).normalized(), 0.01);
  CHECK(diag == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));

  VoxelSet empty(2, 1.0);
  CHECK(shadow_measure(empty, vec2(1, 0), 0.25) == 0.0);

  CHECK_THROWS_AS(shadow_measure(square, vec2(0, 0), 0.25), InputError);
  CHECK_THROWS_AS(shadow_measure(square, vec2(1, 0), 0.9), InputError);  // raster too coarse
}

TEST_CASE("shadow_measure: monotone under inclusion") {
  const auto small = VoxelSet::ball(2, 0.125, 0.7);
  const auto big = VoxelSet::ball(2, 0.125, 1.0);
  for (const auto& dir : sphere_low_discrepancy(2, 8)) {
    CHECK(shadow_measure(small, dir, 0.05) <= shadow_measure(big, dir, 0.05) + 1e-12);
  }
}

TEST_CASE("loomis_whitney_check: cube equality, disk ratio, random sets") {
  // unit cube with the canonical basis: exact equality
  const auto cube2 = VoxelSet::cube(2, 1.0, 1);
  const auto eq2 = loomis_whitney_check(cube2, canonical_basis(2), 0.25);
  CHECK(eq2.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq2.holds);

  const auto cube3 = VoxelSet::cube(3, 0.5, 2);
  const auto eq3 = loomis_whitney_check(cube3, canonical_basis(3), 0.25);
  CHECK(eq3.ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eq3.holds);

  // parallelepiped spanned by the basis vectors: ratio -> 1 with h -> 0
  Eigen::MatrixXd span(2, 2);
  span << 1, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  const DirectionBasis lw_basis({span.col(0), span.col(1)});
  const auto par = VoxelSet::parallelepiped(2, 1.0 / 128, span);
  const auto par_report = loomis_whitney_check(par, lw_basis, 1.0 / 256);
  CHECK(par_report.ratio == doctest::Approx(1.0).epsilon(0.03));
  CHECK(par_report.holds);

  // voxel disk against the canonical frame: pi/4 by hand computation
  const auto disk = VoxelSet::ball(2, 1.0 / 128, 1.0);
  const auto disk_report = loomis_whitney_check(disk, canonical_basis(2), 1.0 / 256);
  CHECK(disk_report.ratio == doctest::Approx(M_PI / 4.0).epsilon(0.03));
  CHECK(disk_report.holds);

  // random voxel blobs with random bases never exceed 1 + tolerance
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 2);
    VoxelSet blob(n, 0.25);
    const int count = 20 + static_cast<int>(rng.next_u64() % 40);
    for (int c = 0; c < count; ++c) {
      Eigen::VectorXi cell(n);
      for (int a = 0; a < n; ++a) cell[a] = static_cast<int>(rng.next_u64() % 6);
      blob.add(cell);
    }
    std::vector<Eigen::VectorXd> dirs;
    while (true) {
      dirs.clear();
      for (int i = 0; i < n; ++i) dirs.push_back(rng.unit_vector(n));
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i) m.col(i) = dirs[i];
      if (std::abs(m.determinant()) > 0.2) break;
    }
    const auto report = loomis_whitney_check(blob, DirectionBasis(dirs), 0.1);
    CHECK(report.holds);
    CHECK(report.tolerance > 0.0);  // the slack is reported, never absorbed
  }
}

TEST_CASE("gram_jacobian equals |det| (hand case and random bases)") {
  for (int i : {0, 1}) CHECK(gram_jacobian(canonical_basis(2), i) == doctest::Approx(1.0));

  // n = 2 hand computation: J = |sin theta|
  for (double theta : {0.3, M_PI / 4, 1.2}) {
    const DirectionBasis basis({vec2(1, 0), vec2(std::cos(theta), std::sin(theta))});
    for (int i : {0, 1})
      CHECK(gram_jacobian(basis, i) == doctest::Approx(std::abs(std::sin(theta))).epsilon(1e-12));
  }
  const DirectionBasis quarter({vec2(1, 0), vec2(std::cos(M_PI / 4), std::sin(M_PI / 4))});
  CHECK(gram_jacobian(quarter, 0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));

  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    std::vector<Eigen::VectorXd> dirs;
    Eigen::MatrixXd m(n, n);
    do {
      dirs.clear();
      for (int i = 0; i < n; ++i) dirs.push_back(rng.unit_vector(n));
      for (int i = 0; i < n; ++i) m.col(i) = dirs[i];
    } while (std::abs(m.determinant()) < 0.1);
    const DirectionBasis basis(dirs);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(gram_jacobian(basis, i) - basis.abs_det()) < 1e-10);
  }
}

TEST_CASE("gagliardo_product_bound: intervals, boxes, random tuples vs oracle") {
  // n = 2, indicators of unit intervals: equality
  SampledField f1(1, {8}, 0.25, 1), f2(1, {8}, 0.25, 1);
  for (int i = 0; i < 4; ++i) f1.values[i] = 1.0;
  for (int i = 0; i < 4; ++i) f2.values[i] = 1.0;
  const auto eq = gagliardo_product_bound({f1, f2});
  CHECK(eq.integral == 1.0);
  CHECK(eq.bound == 1.0);
  CHECK(eq.holds);

  // f2 spread over [0, 2]: integral = bound = 2
  SampledField f2b(1, {8}, 0.25, 1);
  for (int i = 0; i < 8; ++i) f2b.values[i] = 1.0;
  const auto two = gagliardo_product_bound({f1, f2b});
  CHECK(two.integral == 2.0);
  CHECK(two.bound == 2.0);

  // n = 3 box products: equality up to roundoff in the sqrt factors
  SampledField g1(2, {4, 6}, 0.5, 1), g2(2, {5, 6}, 0.5, 1), g3(2, {5, 4}, 0.5, 1);
  const auto box_fill = [](SampledField& f, int a, int b) {
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) f.values[f.flatten({i, j})] = 1.0;
  };
  box_fill(g1, 3, 2);  // Y x Z
  box_fill(g2, 4, 2);  // X x Z
  box_fill(g3, 4, 3);  // X x Y
  const auto box = gagliardo_product_bound({g1, g2, g3});
  CHECK(box.integral == doctest::Approx(box.bound).epsilon(1e-14));
  CHECK(box.holds);

  // random nonnegative 3-tuples at 8^3 against a brute-force triple loop
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<SampledField> fs;
    for (int i = 0; i < 3; ++i) {
      SampledField f(2, {8, 8}, 0.5, 1);
      for (auto& v : f.values) v = rng.uniform();
      fs.push_back(std::move(f));
    }
    const auto report = gagliardo_product_bound(fs);
    CHECK(report.holds);

    double oracle = 0.0;
    for (int x = 0; x < 8; ++x)
      for (int y = 0; y < 8; ++y)
        for (int z = 0; z < 8; ++z)
          oracle += fs[0].values[fs[0].flatten({y, z})] * fs[1].values[fs[1].flatten({x, z})] *
                    fs[2].values[fs[2].flatten({x, y})] * 0.125;
    CHECK(report.integral == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(oracle <= report.bound * (1 + 1e-10));
  }

  // mismatched grids are rejected
  SampledField bad(1, {7}, 0.25, 1);
  CHECK_THROWS_AS(gagliardo_product_bound({f1, bad, bad}), InputError);
  SampledField wrong_pitch(1, {8}, 0.3, 1);
  CHECK_THROWS_AS(gagliardo_product_bound({f1, wrong_pitch}), InputError);

  // signed values are absolute-valued with a note
  SampledField signed1(1, {8}, 0.25, 1), signed2(1, {8}, 0.25, 1);
  signed1.values[2] = -1.0;
  signed2.values[3] = 1.0;
  const auto noted = gagliardo_product_bound({signed1, signed2});
  CHECK(noted.used_absolute_values);
  CHECK(noted.holds);
}
