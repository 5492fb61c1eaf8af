#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spheremag/harmonics.hpp"
#include "test_support.hpp"

using namespace spheremag;
using spheremag::testing::random_unit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("unit vector normalises and rejects zero") {
  const UnitVector u(3.0, 0.0, 4.0);
  CHECK(std::abs(u.vec().norm() - 1.0) <= 1e-12);
  CHECK(u.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVector(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("gauss grid weights and exactness") {
  const QuadratureGrid g = build_gauss_grid(2, 4);
  double s = 0.0;
  for (double w : g.weights()) {
    CHECK(w > 0.0);
    s += w;
  }
  CHECK(std::abs(s - 4 * kPi) <= 1e-12);
  CHECK(g.exactness_degree() == 3);
  CHECK_THROWS_AS(build_gauss_grid(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_gauss_grid(3, -1), std::invalid_argument);
}

TEST_CASE("orthonormality of Y_3k on an 8x16 grid") {
  const QuadratureGrid g = build_gauss_grid(8, 16);
  for (int k = 1; k <= 7; ++k) {
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::pow(sph_harm(3, k, g.node(i)), 2);
    CHECK(std::abs(integrate(f, g) - 1.0) <= 1e-12);
  }
}

TEST_CASE("random harmonic pairs integrate exactly up to the exactness degree") {
  std::mt19937_64 rng(7);
  const QuadratureGrid g = build_gauss_grid(9, 18);
  const int d = g.exactness_degree();
  std::uniform_int_distribution<int> pick(0, d);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = pick(rng);
    const int m = std::uniform_int_distribution<int>(0, d - n)(rng);
    const int k = std::uniform_int_distribution<int>(1, 2 * n + 1)(rng);
    const int l = std::uniform_int_distribution<int>(1, 2 * m + 1)(rng);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = sph_harm(n, k, g.node(i)) * sph_harm(m, l, g.node(i));
    const double expected = (n == m && k == l) ? 1.0 : 0.0;
    CHECK(std::abs(integrate(f, g) - expected) <= 1e-12);
  }
}

TEST_CASE("integrate: constants, odd and quadratic moments") {
  std::mt19937_64 rng(3);
  const QuadratureGrid g = build_gauss_grid(6, 12);
  const UnitVector zeta = random_unit(rng);
  std::vector<double> one(g.size(), 1.0), lin(g.size()), quad(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    lin[i] = g.node(i).dot(zeta);
    quad[i] = lin[i] * lin[i];
  }
  CHECK(std::abs(integrate(one, g) - 4 * kPi) <= 1e-12);
  CHECK(std::abs(integrate(lin, g)) <= 1e-12);
  CHECK(std::abs(integrate(quad, g) - 4 * kPi / 3) <= 1e-12);
  CHECK_THROWS_AS(integrate(std::vector<double>(3, 1.0), g), std::invalid_argument);
}

TEST_CASE("masked integrals over hemispheres on a banded grid") {
  const QuadratureGrid g = build_banded_gauss_grid({0.0}, 6, 12);
  const CapRegion lower = CapRegion::lower_hemisphere();
  std::vector<double> one(g.size(), 1.0), t(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t[i] = g.node(i).z();
  CHECK(std::abs(masked_integrate(one, g, lower) - 2 * kPi) <= 1e-10);
  CHECK(std::abs(masked_integrate(t, g, lower) - kPi) <= 1e-10);
  CHECK(masked_integrate(one, g, CapRegion(UnitVector(0, 0, 1), 1.0)) == 0.0);
  // region and complement partition the grid
  CHECK(std::abs(masked_integrate(t, g, lower) + region_integrate(t, g, lower) - integrate(t, g)) <= 1e-12);
}

TEST_CASE("fibonacci points") {
  const PointSet one = fibonacci_points(1);
  CHECK(one.size() == 1);
  CHECK(std::abs(one[0].vec().norm() - 1.0) <= 1e-12);
  const PointSet p = fibonacci_points(500);
  CHECK(p.min_pairwise_angle() > 0.0);
  Vec3 mean = Vec3::Zero();
  for (const UnitVector& u : p.centers()) mean += u.vec();
  CHECK((mean / 500.0).norm() <= 0.05);
  const PointSet q = fibonacci_points(500);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i].vec() == q[i].vec());
  CHECK_THROWS_AS(fibonacci_points(0), std::invalid_argument);
}

TEST_CASE("rotation_from_z maps the pole to the axis") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const UnitVector a = random_unit(rng);
    const Eigen::Matrix3d r = rotation_from_z(a);
    CHECK((r * Vec3(0, 0, 1) - a.vec()).norm() <= 1e-14);
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() <= 1e-14);
  }
  const Eigen::Matrix3d s = rotation_from_z(UnitVector(0, 0, -1));
  CHECK((s * Vec3(0, 0, 1) - Vec3(0, 0, -1)).norm() <= 1e-15);
}
