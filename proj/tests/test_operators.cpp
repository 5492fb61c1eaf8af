#include <cmath>
#include <random>

#include "doctest.h"
#include "spheremag/operators.hpp"
#include "test_support.hpp"

using namespace spheremag;
using namespace spheremag::testing;

TEST_CASE("multipliers") {
  std::mt19937_64 rng(20);
  ScalarCoeffs y0(0);
  y0(0, 1) = 1.0;
  CHECK(apply_multiplier(y0, Multiplier::D)(0, 1) == 0.5);

  const ScalarCoeffs c = random_scalar(16, rng);
  const ScalarCoeffs a = apply_multiplier(apply_multiplier(c, Multiplier::D_plus_half), Multiplier::D_minus_half);
  const ScalarCoeffs b = apply_multiplier(c, Multiplier::neg_beltrami);
  CHECK(max_abs_diff(a.data(), b.data()) <= 1e-12 * b.norm());
  const ScalarCoeffs id = apply_multiplier(apply_multiplier(c, Multiplier::D), Multiplier::D_inv);
  CHECK(max_abs_diff(id.data(), c.data()) <= 1e-15);
  const ScalarCoeffs id2 =
      apply_multiplier(apply_multiplier(c, Multiplier::D_plus_half), Multiplier::D_plus_half_inv);
  CHECK(max_abs_diff(id2.data(), c.data()) <= 1e-15);

  CHECK_THROWS_AS(apply_multiplier(c, Multiplier::D_minus_half_inv), std::invalid_argument);
  ScalarCoeffs z = c;
  z(0, 1) = 0.0;
  const ScalarCoeffs back =
      apply_multiplier(apply_multiplier(z, Multiplier::D_minus_half_inv), Multiplier::D_minus_half);
  CHECK(max_abs_diff(back.data(), z.data()) <= 1e-15);
}

TEST_CASE("Helmholtz decomposition") {
  std::mt19937_64 rng(21);
  const int L = 8;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L + 2);

  // purely radial field
  const ScalarCoeffs G = random_scalar(L, rng);
  const std::vector<double> Gs = sht_inverse(G, g);
  std::vector<Vec3> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = Gs[i] * g.node(i).vec();
  HelmholtzScalars h = helmholtz_decompose(f, g, L);
  CHECK(max_abs_diff(h.F1.data(), G.data()) <= 1e-10);
  CHECK(h.F2.norm() <= 1e-10);
  CHECK(h.F3.norm() <= 1e-10);

  // grad* Y_{1,1}
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = sph_harm_gradient(1, 1, g.node(i));
  h = helmholtz_decompose(f, g, L);
  CHECK(std::abs(h.F2(1, 1) - 1.0) <= 1e-10);
  CHECK(h.F1.norm() <= 1e-10);
  CHECK(h.F3.norm() <= 1e-10);

  // random field resynthesised
  const VectorCoeffs c = random_vector(L, rng);
  f = vsht_inverse(c, g);
  h = helmholtz_decompose(f, g, L);
  CHECK(h.F2(0, 1) == 0.0);
  CHECK(h.F3(0, 1) == 0.0);
  CHECK(max_abs_diff(synthesize(h, g), f) <= 1e-10);
  CHECK_THROWS_AS(helmholtz_decompose(f, gauss_grid_for_degree(2 * L + 1), L), std::invalid_argument);
}

TEST_CASE("variant II scalars from Helmholtz scalars") {
  const int L = 3;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L + 2);

  HelmholtzScalars h{ScalarCoeffs(L), ScalarCoeffs(L), ScalarCoeffs(L)};
  h.F2(1, 1) = 1.0;
  HardyHodgeScalars s = hardy_hodge_from_helmholtz(h);
  CHECK(std::abs(s.S1(1, 1) + 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(s.S2(1, 1) - 2.0 / 3.0) <= 1e-15);
  // o~1 S1 + o~2 S2 must reproduce grad* Y_{1,1}
  const std::vector<Vec3> lhs = synthesize(helmholtz_from_hardy_hodge(s), g);
  std::vector<Vec3> rhs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = sph_harm_gradient(1, 1, g.node(i));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12);

  h = {ScalarCoeffs(L), ScalarCoeffs(L), ScalarCoeffs(L)};
  h.F1(0, 1) = 1.0;
  s = hardy_hodge_from_helmholtz(h);
  CHECK(s.S1(0, 1) == 1.0);
  CHECK(s.S2(0, 1) == 1.0);

  h = {ScalarCoeffs(L), ScalarCoeffs(L), ScalarCoeffs(L)};
  h.F3(2, 1) = 1.0;
  s = hardy_hodge_from_helmholtz(h);
  CHECK(s.S3(2, 1) == 1.0);
  CHECK(s.S1.norm() == 0.0);
  CHECK(s.S2.norm() == 0.0);

  h.F2(0, 1) = 0.1;
  CHECK_THROWS_AS(hardy_hodge_from_helmholtz(h), std::invalid_argument);
}

TEST_CASE("variant III scalars") {
  std::mt19937_64 rng(22);
  const int L = 10;
  HelmholtzScalars h{random_scalar(L, rng), random_scalar(L, rng), random_scalar(L, rng)};
  h.F2(0, 1) = 0.0;
  h.F3(0, 1) = 0.0;
  const HardyHodgeScalars s3 = hh3_scalars(h);
  const HardyHodgeScalars via2 = hh3_from_hh2(hardy_hodge_from_helmholtz(h));
  CHECK(max_abs_diff(s3.S1.data(), via2.S1.data()) <= 1e-12);
  CHECK(max_abs_diff(s3.S2.data(), via2.S2.data()) <= 1e-12);
  CHECK(max_abs_diff(s3.S3.data(), via2.S3.data()) <= 1e-12);
  CHECK(s3.S2(0, 1) == 0.0);
  CHECK(s3.S3(0, 1) == 0.0);

  HelmholtzScalars one{ScalarCoeffs(2), ScalarCoeffs(2), ScalarCoeffs(2)};
  one.F1(0, 1) = 1.0;
  const HardyHodgeScalars a = hh3_scalars(one);
  CHECK(std::abs(a.S1(0, 1) - 1.0) <= 1e-15);
  CHECK(a.S2.norm() == 0.0);
  HelmholtzScalars curl{ScalarCoeffs(2), ScalarCoeffs(2), ScalarCoeffs(2)};
  curl.F3(1, 1) = 1.0;
  CHECK(std::abs(hh3_scalars(curl).S3(1, 1) - 1.0) <= 1e-15);
}

TEST_CASE("o-bar operators agree with o-tilde operators") {
  std::mt19937_64 rng(23);
  const int L = 8;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L + 2);
  HelmholtzScalars h{random_scalar(L, rng), random_scalar(L, rng), random_scalar(L, rng)};
  h.F2(0, 1) = 0.0;
  h.F3(0, 1) = 0.0;
  const HardyHodgeScalars s2 = hardy_hodge_from_helmholtz(h);
  const HardyHodgeScalars s3 = hh3_from_hh2(s2);
  for (int i = 1; i <= 3; ++i) {
    const ScalarCoeffs& tilde_s = i == 1 ? s2.S1 : (i == 2 ? s2.S2 : s2.S3);
    const ScalarCoeffs& bar_s = i == 1 ? s3.S1 : (i == 2 ? s3.S2 : s3.S3);
    ScalarCoeffs ts = tilde_s;
    if (i == 2) ts(0, 1) = 0.0;  // o~2 annihilates constants
    const std::vector<Vec3> a = synthesize(tilde_operator(i, ts), g);
    const std::vector<Vec3> b = synthesize(bar_operator(i, bar_s), g);
    CHECK(max_abs_diff(a, b) <= 1e-10);
  }
}

TEST_CASE("Hardy-Hodge spectral decomposition") {
  std::mt19937_64 rng(24);
  const int L = 8;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L + 2);
  std::vector<Vec3> y(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) y[i] = vector_harm(3, 2, 2, g.node(i));
  const HardyHodgeSpectral one = hardy_hodge_spectral(y, g, L);
  CHECK(std::abs(one.coeffs.at(3, 2, 2) - 1.0) <= 1e-10);
  CHECK(std::abs(one.coeffs.norm_squared() - 1.0) <= 1e-10);

  const std::vector<Vec3> f = vsht_inverse(random_vector(L, rng), g);
  const HardyHodgeSpectral hs = hardy_hodge_spectral(f, g, L);
  const HardyHodgeScalars dual = hardy_hodge_from_helmholtz(helmholtz_decompose(f, g, L));
  CHECK(max_abs_diff(hs.scalars.S1.data(), dual.S1.data()) <= 1e-10);
  CHECK(max_abs_diff(hs.scalars.S2.data(), dual.S2.data()) <= 1e-10);
  CHECK(max_abs_diff(hs.scalars.S3.data(), dual.S3.data()) <= 1e-10);
  const auto parts = hardy_hodge_parts(hs.coeffs, g);
  std::vector<Vec3> sum(g.size(), Vec3::Zero());
  for (const auto& p : parts)
    for (std::size_t i = 0; i < g.size(); ++i) sum[i] += p[i];
  CHECK(max_abs_diff(sum, f) <= 1e-10);
  const double nf = l2_squared(f, g);
  CHECK(std::abs(l2_inner(parts[0], parts[1], g)) <= 1e-10 * nf);
  CHECK(std::abs(l2_inner(parts[0], parts[2], g)) <= 1e-10 * nf);
  CHECK(std::abs(l2_inner(parts[1], parts[2], g)) <= 1e-10 * nf);
}
