#include <cmath>

#include "doctest.h"
#include "spheremag/scenarios.hpp"
#include "test_support.hpp"

using namespace spheremag;
using namespace spheremag::testing;

TEST_CASE("example fields") {
  const ExampleField e1 = example_field(1);
  CHECK(e1.Q(UnitVector(0, 0, -1)) == 1.0);
  CHECK(e1.Q(UnitVector(0, 0, 1)) == 0.0);
  CHECK(e1.Q(UnitVector(1, 0, -1)) == doctest::Approx(0.25));
  // v = xi + zeta - (zeta.xi) xi has unit radial part
  const UnitVector x(0.3, -0.4, 0.5);
  CHECK(x.dot(e1.v(x)) == doctest::Approx(1.0).epsilon(1e-15));

  const Vec3 zb = example_zeta_bar();
  CHECK(zb.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
  const ExampleField e2 = example_field(2);
  CHECK(e2.Q(UnitVector(0, 0, -1)) == 0.0);  // xi.zeta_bar = 1/4 < 1/2
  CHECK(e2.Q(UnitVector(0, 0, 1)) == 0.0);
  // a point of the support on the great circle x = 0
  const double t = -0.9, s = std::sqrt(1 - t * t);
  const UnitVector in(0, s, t);
  const double tb = in.dot(zb);
  REQUIRE(tb >= 0.5);
  const double a = 0.5 + t;
  CHECK(e2.Q(in) == doctest::Approx(1000.0 * std::pow(a, 4) * std::cos(2 * M_PI * t) * std::sin(2 * M_PI * tb)));
  CHECK(in.dot(e2.v(in)) == doctest::Approx(tb).epsilon(1e-15));
  CHECK_THROWS_AS(example_field(3), std::invalid_argument);
}

TEST_CASE("truth data converge with the source grid") {
  const ExampleField ex = example_field(1);
  const PotentialSamples a = synthesize_data(ex, 1.1, 16, 120, 300);
  const PotentialSamples b = synthesize_data(ex, 1.1, 16, 200, 400);
  double scale = 0.0;
  for (double v : b.values) scale = std::max(scale, std::abs(v));
  CHECK(max_abs_diff(a.values, b.values) <= 1e-10 * scale);
}

TEST_CASE("display grid and relative error") {
  const DisplayGrid d = display_grid();
  CHECK(d.points.size() == 181u * 360u);
  CHECK(d.lat_deg.front() == -90.0);
  CHECK(d.lat_deg.back() == 90.0);
  CHECK(d.lon_deg[1] == -179.0);
  for (std::size_t i = 0; i < d.points.size(); i += 997) {
    CHECK(std::asin(d.points[i].z()) * 180.0 / M_PI == doctest::Approx(d.lat_deg[i]).epsilon(1e-12));
  }

  const ExampleField ex = example_field(1);
  const AbelPoissonBasis basis(fibonacci_points(10), 0.5);
  const std::vector<double> zero(10, 0.0);
  CHECK(relative_error(basis, zero, ex) == doctest::Approx(1.0).epsilon(1e-15));
}
