#include <cmath>
#include <random>

#include "doctest.h"
#include "spheremag/uniqueness.hpp"
#include "test_support.hpp"

using namespace spheremag;
using namespace spheremag::testing;

namespace {

VectorField tilted_field(double tilt) {
  return [tilt](const UnitVector& x) { return Vec3(x.vec() + tilt * (Vec3(1, 0, 0) - x.x() * x.vec())); };
}

// exterior potential of grid samples through their vector transform
std::vector<double> exterior_via_transform(const std::vector<Vec3>& m, const QuadratureGrid& g, int L,
                                           const std::vector<Vec3>& xs) {
  const VectorCoeffs c = vsht_forward(m, g, L);
  std::vector<double> out;
  for (const Vec3& x : xs) out.push_back(potential_exterior_spectral(c, x));
  return out;
}

}  // namespace

TEST_CASE("silent constructions") {
  std::mt19937_64 rng(40);
  const int L = 6;
  // direct quadrature of the potential at R = 1.1 or 0.9 needs a fine grid
  const QuadratureGrid g = gauss_grid_for_degree(300);
  const ScalarCoeffs S1 = random_scalar(L, rng), S2 = random_scalar(L, rng), S3 = random_scalar(L, rng);

  const std::vector<Vec3> ext = make_silent_exterior(S1, S3, g);
  CHECK(silence_score(ext, g, 1.1) <= 1e-10);
  CHECK(silence_score(ext, g, 0.9) > 1e-3);

  const std::vector<Vec3> in = make_silent_interior(S2, S3, g);
  CHECK(silence_score(in, g, 0.9) <= 1e-10);
  CHECK(silence_score(in, g, 1.1) > 1e-3);

  // energies: family 2 absent from the exterior-silent field
  const auto e = hardy_hodge_energy(ext, g, L);
  CHECK(e[1] <= 1e-20 * (e[0] + e[2]));
  CHECK(e[0] > 0.0);

  const std::vector<Vec3> zero(g.size(), Vec3::Zero());
  CHECK(silence_score(zero, g, 1.1) == 0.0);
  CHECK_THROWS_AS(silence_score(ext, g, 1.0), std::invalid_argument);
}

TEST_CASE("unidirectional field is silent on both sides") {
  const UnidirectionalSpec spec = default_unidirectional_spec();
  CHECK(spec.profile(-0.5) == doctest::Approx(1.0));
  CHECK(spec.profile(-0.95) == 0.0);
  const QuadratureGrid g = unidirectional_grid(spec, 160);
  const std::vector<Vec3> m = unidirectional_silent(spec, g);
  CHECK(silence_score(m, g, 1.1) <= 1e-6);
  CHECK(silence_score(m, g, 0.9) <= 1e-6);
  // purely tangential and divergence free: only family 3 energy
  const auto e = hardy_hodge_energy(m, g, 40);
  CHECK(e[0] + e[1] <= 1e-20 * e[2]);

  UnidirectionalSpec bad = spec;
  bad.a = 0.2;
  bad.b = 0.1;
  CHECK_THROWS_AS(unidirectional_field(bad), std::invalid_argument);
}

TEST_CASE("admissibility tensor against pointwise gradients") {
  const int L = 4;
  const QuadratureGrid g = gauss_grid_for_degree(40);
  const VectorField v = tilted_field(0.2);
  const AdmissibilityTensor T = admissibility_coeffs(v, L, g);
  CHECK(T.C > 0.5);
  for (auto [n, k, m, l] : {std::array{1, 1, 2, 3}, std::array{3, 5, 2, 2}, std::array{4, 9, 1, 2}}) {
    double ref = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec3 vi = v(g.node(i));
      ref += g.weight(i) * sph_harm(m, l, g.node(i)) * (vi / g.node(i).dot(vi)).dot(sph_harm_gradient(n, k, g.node(i)));
    }
    CHECK(T(n, k, m, l) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("tangential v is rejected") {
  const QuadratureGrid g = gauss_grid_for_degree(20);
  const VectorField tangent = [](const UnitVector& x) { return Vec3(Vec3(0, 0, 1) - x.z() * x.vec()); };
  CHECK_THROWS_AS(admissibility_coeffs(tangent, 4, g), PreconditionViolation);
  try {
    admissibility_coeffs(tangent, 4, g);
  } catch (const PreconditionViolation& e) {
    CHECK(std::string(e.what()).find("|xi.v(xi)| >= C") != std::string::npos);
  }
}

TEST_CASE("existence: induced target is reproduced exactly") {
  std::mt19937_64 rng(41);
  const VectorField v = tilted_field(0.2);
  const ScalarCoeffs Q0 = random_scalar(4, rng);
  const QuadratureGrid g = gauss_grid_for_degree(60);
  const std::vector<double> q = sht_inverse(Q0, g);
  std::vector<Vec3> m(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) m[i] = q[i] * v(g.node(i));
  const VectorCoeffs target = vsht_forward(m, g, 12);

  const ExistenceResult r = solve_existence_truncated(target, v, 12, g);
  CHECK(r.solved);
  CHECK(r.relative_residual <= 1e-10);
  // xi.v = 1 for this tilt field, so M1 = Q0
  CHECK(max_abs_diff(r.M1.data(), Q0.with_band_limit(12).data()) <= 1e-8);
}

TEST_CASE("existence: generic target, exterior equivalence") {
  std::mt19937_64 rng(42);
  const VectorField v = tilted_field(0.2);
  const VectorCoeffs target = random_vector(4, rng);
  const QuadratureGrid g = gauss_grid_for_degree(60);
  const ExistenceResult r = solve_existence_truncated(target, v, 12, g);
  CHECK(r.solved);

  const std::vector<Vec3> m = r.model.samples(g);
  std::vector<Vec3> xs;
  const PointSet dirs = fibonacci_points(50);
  for (const UnitVector& u : dirs.centers()) xs.push_back(1.1 * u.vec());
  const std::vector<double> got = exterior_via_transform(m, g, 28, xs);
  std::vector<double> want;
  for (const Vec3& x : xs) want.push_back(potential_exterior_spectral(target, x));
  double scale = 0.0;
  for (double w : want) scale = std::max(scale, std::abs(w));
  CHECK(max_abs_diff(got, want) <= 1e-6 * scale);
}

TEST_CASE("uniqueness witness") {
  // two susceptibilities with the same exterior potential coincide;
  // distinct ones supported in the southern cap are told apart
  const VectorField v = tilted_field(0.2);
  const QuadratureGrid g = build_banded_gauss_grid({0.0}, 60, 160);
  const ScalarField Q1 = [](const UnitVector& x) { return x.z() < 0.0 ? std::pow(x.z(), 4) : 0.0; };
  const ScalarField Q2 = [](const UnitVector& x) { return x.z() < 0.0 ? std::pow(x.z(), 4) * (1.0 + 0.1 * x.x()) : 0.0; };
  const InducedModel a{Q1, v}, b{Q1, v}, c{Q2, v};
  const std::vector<Vec3> ma = a.samples(g), mb = b.samples(g), mc = c.samples(g);
  std::vector<Vec3> dab(g.size()), dac(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    dab[i] = ma[i] - mb[i];
    dac[i] = ma[i] - mc[i];
  }
  CHECK(silence_score(dab, g, 1.1) == 0.0);
  CHECK(silence_score(dac, g, 1.1) > 1e-4);
}
