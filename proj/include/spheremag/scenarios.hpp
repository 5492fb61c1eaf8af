#pragma once

#include <span>
#include <string>
#include <vector>

#include "spheremag/inverse.hpp"

namespace spheremag {

/// The two synthetic test cases for the reconstruction.
///
/// Example 1: Q = (xi.zeta)^4 on the lower hemisphere, v = xi + zeta - (zeta.xi) xi.
/// Example 2: Q = 1000 (1/2 + xi.zeta)^4 cos(2 pi xi.zeta) sin(2 pi xi.zeta_bar) on
/// {xi.zeta <= -1/2, xi.zeta_bar >= 1/2}, v = (zeta_bar.xi) xi + zeta - (zeta.xi) xi,
/// with zeta = (0, 0, 1) and zeta_bar = (0, sqrt(15)/4, -1/4).
struct ExampleField {
  int id = 1;
  ScalarField Q;
  VectorField v;
  int v_degree = 2;
  // t = xi.zeta values where Q is not smooth; quadrature bands break there
  std::vector<double> breaks;
  double h = 0.9;
};

Vec3 example_zeta();
Vec3 example_zeta_bar();
ExampleField example_field(int id);

/// Magnetization Q v sampled on a grid.
std::vector<Vec3> induced_samples(const ScalarField& Q, const VectorField& v, const QuadratureGrid& grid);

/// Banded source grid for integrals of example fields.
QuadratureGrid example_source_grid(const ExampleField& ex, int n_per_band = 200, int n_lon = 400);

/// Potential of Q v on R * (nodes of a Gauss grid of the given exactness),
/// by direct quadrature over the example's banded source grid.
PotentialSamples synthesize_data(const ExampleField& ex, double R, int data_exactness, int n_per_band = 200,
                                 int n_lon = 400);

/// Relative l2 error || Q_bar - Q || / || Q || of a kernel expansion against
/// the true susceptibility, on a banded grid.
double relative_error(const AbelPoissonBasis& basis, std::span<const double> gamma, const ExampleField& ex,
                      int n_per_band = 60, int n_lon = 240);

/// Equiangular display grid: latitudes -90..90 and longitudes -180..179 in
/// whole degrees.
struct DisplayGrid {
  std::vector<double> lon_deg, lat_deg;
  std::vector<UnitVector> points;
};
DisplayGrid display_grid(int n_lat = 181, int n_lon = 360);

}  // namespace spheremag
