#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spheremag/harmonics.hpp"
#include "test_support.hpp"

using namespace spheremag;
using namespace spheremag::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("legendre polynomials") {
  CHECK(legendre(0, 0.3) == 1.0);
  CHECK(legendre(1, 0.5) == 0.5);
  CHECK(std::abs(legendre(2, 0.5) - (3 * 0.25 - 1) / 2) <= 1e-15);
  CHECK(std::abs(legendre(5, 1.0) - 1.0) <= 1e-15);
  CHECK_THROWS_AS(legendre(2, 1.5), std::invalid_argument);
}

TEST_CASE("low-degree harmonics match Cartesian closed forms") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const UnitVector u = random_unit(rng);
    const double x = u.x(), y = u.y(), z = u.z();
    CHECK(std::abs(sph_harm(0, 1, u) - 1 / std::sqrt(4 * kPi)) <= 1e-15);
    const double c1 = std::sqrt(3 / (4 * kPi));
    CHECK(std::abs(sph_harm(1, 1, u) - c1 * y) <= 1e-14);
    CHECK(std::abs(sph_harm(1, 2, u) - c1 * z) <= 1e-14);
    CHECK(std::abs(sph_harm(1, 3, u) - c1 * x) <= 1e-14);
    CHECK(std::abs(sph_harm(2, 3, u) - std::sqrt(5 / (16 * kPi)) * (3 * z * z - 1)) <= 1e-14);
    CHECK(std::abs(sph_harm(2, 4, u) - std::sqrt(15 / (4 * kPi)) * x * z) <= 1e-14);
    CHECK(std::abs(sph_harm(2, 5, u) - std::sqrt(15 / (16 * kPi)) * (x * x - y * y)) <= 1e-14);
    CHECK(std::abs(sph_harm(2, 1, u) - std::sqrt(15 / (4 * kPi)) * x * y) <= 1e-14);
  }
  CHECK_THROWS_AS(sph_harm(2, 6, UnitVector()), std::invalid_argument);
  CHECK_THROWS_AS(sph_harm(2, 0, UnitVector()), std::invalid_argument);
}

TEST_CASE("addition theorem up to degree 10") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const UnitVector a = random_unit(rng), b = random_unit(rng);
    for (int n = 0; n <= 10; ++n) {
      double s = 0.0;
      for (int k = 1; k <= 2 * n + 1; ++k) s += sph_harm(n, k, a) * sph_harm(n, k, b);
      CHECK(std::abs(s - (2 * n + 1) / (4 * kPi) * legendre(n, a.dot(b))) <= 1e-12);
    }
  }
  const UnitVector a = random_unit(rng);
  double s = 0.0;
  for (int k = 1; k <= 7; ++k) s += std::pow(sph_harm(3, k, a), 2);
  CHECK(std::abs(s - 7 / (4 * kPi)) <= 1e-12);
}

TEST_CASE("surface gradient agrees with finite differences, including near the poles") {
  std::mt19937_64 rng(4);
  std::vector<UnitVector> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(random_unit(rng));
  pts.emplace_back(1e-4, 2e-4, 1.0);
  pts.emplace_back(-3e-4, 1e-4, -1.0);
  const double eps = 1e-6;
  for (const UnitVector& u : pts)
    for (int n = 0; n <= 6; ++n)
      for (int k = 1; k <= 2 * n + 1; ++k) {
        // extend Y homogeneously of degree 0 and differentiate; tangential part is grad*
        Vec3 g;
        for (int d = 0; d < 3; ++d) {
          Vec3 e = Vec3::Zero();
          e[d] = eps;
          g[d] = (sph_harm(n, k, UnitVector(u.vec() + e)) - sph_harm(n, k, UnitVector(u.vec() - e))) / (2 * eps);
        }
        const Vec3 expected = g - u.vec().dot(g) * u.vec();
        CHECK((sph_harm_gradient(n, k, u) - expected).norm() <= 1e-6 * (1 + n * n));
        CHECK(std::abs(u.dot(sph_harm_curl(n, k, u))) <= 1e-13 * (1 + n * n));
      }
}

TEST_CASE("inner and outer harmonics") {
  std::mt19937_64 rng(5);
  const UnitVector u = random_unit(rng);
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(inner_harmonic(1, k, u.vec()) - sph_harm(1, k, u)) <= 1e-15);
    CHECK(std::abs(outer_harmonic(1, k, u.vec()) - sph_harm(1, k, u)) <= 1e-15);
    CHECK(std::abs(outer_harmonic(1, k, 2.0 * u.vec()) - 0.25 * sph_harm(1, k, u)) <= 1e-15);
  }
  CHECK_THROWS_AS(outer_harmonic(1, 1, Vec3::Zero()), std::invalid_argument);
  CHECK(inner_harmonic(2, 1, Vec3::Zero()) == 0.0);

  // 7-point Laplacian of H^int_{3,2}
  const Vec3 x = 0.7 * random_unit(rng).vec();
  const double hstep = 1e-3;
  double lap = -6 * inner_harmonic(3, 2, x);
  for (int d = 0; d < 3; ++d) {
    Vec3 e = Vec3::Zero();
    e[d] = hstep;
    lap += inner_harmonic(3, 2, x + e) + inner_harmonic(3, 2, x - e);
  }
  lap /= hstep * hstep;
  CHECK(std::abs(lap) <= 1e-6 * 10);

  // analytic gradients against central differences
  const Vec3 y = 1.3 * random_unit(rng).vec();
  for (int n = 0; n <= 4; ++n)
    for (int k = 1; k <= 2 * n + 1; ++k) {
      Vec3 gi, go;
      for (int d = 0; d < 3; ++d) {
        Vec3 e = Vec3::Zero();
        e[d] = 1e-6;
        gi[d] = (inner_harmonic(n, k, y + e) - inner_harmonic(n, k, y - e)) / 2e-6;
        go[d] = (outer_harmonic(n, k, y + e) - outer_harmonic(n, k, y - e)) / 2e-6;
      }
      CHECK((inner_harmonic_gradient(n, k, y) - gi).norm() <= 1e-7);
      CHECK((outer_harmonic_gradient(n, k, y) - go).norm() <= 1e-7);
    }
}

TEST_CASE("vector harmonics: special values and Gram matrix") {
  std::mt19937_64 rng(6);
  const UnitVector u = random_unit(rng);
  CHECK((vector_harm(1, 0, 1, u) - u.vec() / std::sqrt(4 * kPi)).norm() <= 1e-15);
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= 2 * n + 1; ++k) CHECK(std::abs(u.dot(vector_harm(3, n, k, u))) <= 1e-14);
  CHECK_THROWS_AS(vector_harm(2, 0, 1, u), std::invalid_argument);
  CHECK_THROWS_AS(vector_harm(4, 1, 1, u), std::invalid_argument);

  const QuadratureGrid g = gauss_grid_for_degree(12);
  struct Entry {
    int i, n, k;
  };
  std::vector<Entry> basis;
  for (int i = 1; i <= 3; ++i)
    for (int n = (i == 1 ? 0 : 1); n <= 4; ++n)
      for (int k = 1; k <= 2 * n + 1; ++k) basis.push_back({i, n, k});
  std::vector<std::vector<Vec3>> samples;
  for (const Entry& e : basis) {
    std::vector<Vec3> s(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) s[p] = vector_harm(e.i, e.n, e.k, g.node(p));
    samples.push_back(std::move(s));
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      worst = std::max(worst, std::abs(l2_inner(samples[a], samples[b], g) - (a == b ? 1.0 : 0.0)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("vector harmonics are the boundary limits of harmonic gradients") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const UnitVector u = random_unit(rng);
    for (int n = 0; n <= 4; ++n)
      for (int k = 1; k <= 2 * n + 1; ++k) {
        const Vec3 y1 = -outer_harmonic_gradient(n, k, u.vec()) / std::sqrt(mu(1, n));
        CHECK((y1 - vector_harm(1, n, k, u)).norm() <= 1e-10);
        if (n >= 1) {
          const Vec3 y2 = inner_harmonic_gradient(n, k, u.vec()) / std::sqrt(mu(2, n));
          CHECK((y2 - vector_harm(2, n, k, u)).norm() <= 1e-10);
        }
      }
  }
}

TEST_CASE("scalar transform round trip and Parseval") {
  std::mt19937_64 rng(9);
  const int L = 8;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L);
  std::vector<double> one(g.size(), 1.0);
  const ScalarCoeffs c1 = sht_forward(one, g, L);
  CHECK(std::abs(c1(0, 1) - std::sqrt(4 * kPi)) <= 1e-12);
  for (std::size_t i = 1; i < c1.size(); ++i) CHECK(std::abs(c1.data()[i]) <= 1e-12);

  const ScalarCoeffs c = random_scalar(L, rng);
  const std::vector<double> f = sht_inverse(c, g);
  const std::vector<double> fp = sht_inverse(c, std::span<const UnitVector>(g.nodes()));
  CHECK(max_abs_diff(f, fp) <= 1e-12);
  const ScalarCoeffs back = sht_forward(f, g, L);
  CHECK(max_abs_diff(back.data(), c.data()) <= 1e-12);
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  CHECK(std::abs(integrate(sq, g) - c.norm() * c.norm()) <= 1e-12 * c.norm() * c.norm());
  CHECK_THROWS_AS(sht_forward(f, gauss_grid_for_degree(2 * L - 1), L), std::invalid_argument);
}

TEST_CASE("vector transform round trip and Parseval") {
  std::mt19937_64 rng(10);
  const int L = 8;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L + 2);
  const VectorCoeffs c = random_vector(L, rng);
  const std::vector<Vec3> f = vsht_inverse(c, g);
  const std::vector<Vec3> fp = vsht_inverse(c, std::span<const UnitVector>(g.nodes()));
  CHECK(max_abs_diff(f, fp) <= 1e-12);
  const VectorCoeffs back = vsht_forward(f, g, L);
  for (int i = 1; i <= 3; ++i) CHECK(max_abs_diff(back.family(i).data(), c.family(i).data()) <= 1e-10);
  CHECK(std::abs(l2_squared(f, g) - c.norm_squared()) <= 1e-10 * c.norm_squared());

  // y~(2)_{1,1} and xi Y_{0,1}
  std::vector<Vec3> y2(g.size()), radial(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    y2[p] = vector_harm(2, 1, 1, g.node(p));
    radial[p] = g.node(p).vec() * sph_harm(0, 1, g.node(p));
  }
  const VectorCoeffs a = vsht_forward(y2, g, 3);
  CHECK(std::abs(a.at(2, 1, 1) - 1.0) <= 1e-10);
  CHECK(a.norm_squared() - 1.0 <= 1e-10);
  const VectorCoeffs b = vsht_forward(radial, g, 3);
  CHECK(std::abs(b.at(1, 0, 1) - 1.0) <= 1e-10);
  CHECK(b.norm_squared() - 1.0 <= 1e-10);
  CHECK_THROWS_AS(vsht_forward(f, gauss_grid_for_degree(2 * L + 1), L), std::invalid_argument);
  CHECK_THROWS_AS(a.at(3, 0, 1), std::invalid_argument);
}

TEST_CASE("Helmholtz and vector coefficient conversions are inverse") {
  std::mt19937_64 rng(12);
  const VectorCoeffs c = random_vector(6, rng);
  ScalarCoeffs F1, F2, F3;
  vector_to_helmholtz(c, F1, F2, F3);
  CHECK(F2(0, 1) == 0.0);
  CHECK(F3(0, 1) == 0.0);
  const VectorCoeffs back = helmholtz_to_vector(F1, F2, F3);
  for (int i = 1; i <= 3; ++i) CHECK(max_abs_diff(back.family(i).data(), c.family(i).data()) <= 1e-13);
}
