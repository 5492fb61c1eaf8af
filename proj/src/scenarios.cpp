#include "spheremag/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spheremag {

namespace {
constexpr double kPi = std::numbers::pi;
}

Vec3 example_zeta() { return Vec3(0.0, 0.0, 1.0); }
Vec3 example_zeta_bar() { return Vec3(0.0, std::sqrt(15.0) / 4.0, -0.25); }

ExampleField example_field(int id) {
  const Vec3 zeta = example_zeta(), zbar = example_zeta_bar();
  ExampleField ex;
  ex.id = id;
  if (id == 1) {
    ex.Q = [zeta](const UnitVector& x) {
      const double t = x.dot(zeta);
      return t <= 0.0 ? t * t * t * t : 0.0;
    };
    ex.v = [zeta](const UnitVector& x) { return Vec3(x.vec() + zeta - zeta.dot(x.vec()) * x.vec()); };
    ex.breaks = {0.0};
    ex.h = 0.9;
  } else if (id == 2) {
    ex.Q = [zeta, zbar](const UnitVector& x) {
      const double t = x.dot(zeta), tb = x.dot(zbar);
      if (!(t <= -0.5 && tb >= 0.5)) return 0.0;
      const double a = 0.5 + t;
      return 1000.0 * a * a * a * a * std::cos(2.0 * kPi * t) * std::sin(2.0 * kPi * tb);
    };
    ex.v = [zeta, zbar](const UnitVector& x) {
      return Vec3(zbar.dot(x.vec()) * x.vec() + zeta - zeta.dot(x.vec()) * x.vec());
    };
    ex.breaks = {-0.5};
    ex.h = 0.95;
  } else {
    throw std::invalid_argument("example id must be 1 or 2");
  }
  return ex;
}

std::vector<Vec3> induced_samples(const ScalarField& Q, const VectorField& v, const QuadratureGrid& grid) {
  std::vector<Vec3> m(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = Q(grid.node(i));
    m[i] = q == 0.0 ? Vec3::Zero() : Vec3(q * v(grid.node(i)));
  }
  return m;
}

QuadratureGrid example_source_grid(const ExampleField& ex, int n_per_band, int n_lon) {
  return build_banded_gauss_grid(ex.breaks, n_per_band, n_lon);
}

PotentialSamples synthesize_data(const ExampleField& ex, double R, int data_exactness, int n_per_band,
                                 int n_lon) {
  QuadratureGrid data = gauss_grid_for_degree(data_exactness);
  const QuadratureGrid src = example_source_grid(ex, n_per_band, n_lon);
  const std::vector<Vec3> m = induced_samples(ex.Q, ex.v, src);
  std::vector<Vec3> xs(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) xs[i] = R * data.node(i).vec();
  std::vector<double> values = potential_direct(m, src, xs);
  return PotentialSamples(R, std::move(data), std::move(values));
}

double relative_error(const AbelPoissonBasis& basis, std::span<const double> gamma, const ExampleField& ex,
                      int n_per_band, int n_lon) {
  const QuadratureGrid g = example_source_grid(ex, n_per_band, n_lon);
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double q = ex.Q(g.node(i));
    const double d = basis.evaluate(gamma, g.node(i)) - q;
    err += g.weight(i) * d * d;
    ref += g.weight(i) * q * q;
  }
  return std::sqrt(err / ref);
}

DisplayGrid display_grid(int n_lat, int n_lon) {
  if (n_lat < 2 || n_lon < 1) throw std::invalid_argument("display_grid: need n_lat >= 2 and n_lon >= 1");
  DisplayGrid d;
  for (int i = 0; i < n_lat; ++i) {
    const double lat = -90.0 + 180.0 * i / (n_lat - 1);
    for (int j = 0; j < n_lon; ++j) {
      const double lon = -180.0 + 360.0 * j / n_lon;
      const double la = lat * kPi / 180.0, lo = lon * kPi / 180.0;
      d.lat_deg.push_back(lat);
      d.lon_deg.push_back(lon);
      d.points.emplace_back(std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la));
    }
  }
  return d;
}

}  // namespace spheremag
