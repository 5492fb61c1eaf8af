#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "spheremag/harmonics.hpp"

namespace spheremag::testing {

inline UnitVector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return UnitVector(g(rng), g(rng), g(rng));
}

inline ScalarCoeffs random_scalar(int L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarCoeffs c(L);
  for (double& v : c.data()) v = u(rng);
  return c;
}

inline VectorCoeffs random_vector(int L, std::mt19937_64& rng) {
  VectorCoeffs c(L);
  c.c1 = random_scalar(L, rng);
  c.c2 = random_scalar(L, rng);
  c.c3 = random_scalar(L, rng);
  c.c2.data()[0] = 0.0;
  c.c3.data()[0] = 0.0;
  return c;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return m;
}

// l2 norm squared of a vector field by quadrature
inline double l2_squared(const std::vector<Vec3>& f, const QuadratureGrid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += grid.weight(i) * f[i].squaredNorm();
  return s;
}

inline double l2_inner(const std::vector<Vec3>& f, const std::vector<Vec3>& g, const QuadratureGrid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += grid.weight(i) * f[i].dot(g[i]);
  return s;
}

}  // namespace spheremag::testing
