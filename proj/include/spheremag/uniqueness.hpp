#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spheremag/forward.hpp"
#include "spheremag/operators.hpp"

namespace spheremag {

/// Induced magnetization m = Q v.
struct InducedModel {
  ScalarField Q;
  VectorField v;

  Vec3 operator()(const UnitVector& xi) const;
  std::vector<Vec3> samples(const QuadratureGrid& grid) const;
};

/// m(xi) = v3 * profile(xi.zeta) * (xi x zeta), with the profile vanishing
/// outside [a, b], -1 < a < b < 1.
struct UnidirectionalSpec {
  std::function<double(double)> profile;
  double a = -0.9, b = -0.1;
  UnitVector zeta;
  double v3 = 1.0;
};

/// Profile ((t - a)(b - t))^4 / ((b - a)/2)^8 on [a, b], peaking at 1.
UnidirectionalSpec make_unidirectional_spec(double a, double b, const UnitVector& zeta, double v3);
/// a = -0.9, b = -0.1, zeta = (0, 0, 1), v3 = 1.
UnidirectionalSpec default_unidirectional_spec();
VectorField unidirectional_field(const UnidirectionalSpec& spec);
std::vector<Vec3> unidirectional_silent(const UnidirectionalSpec& spec, const QuadratureGrid& grid);
/// Grid with bands breaking at a and b when zeta is a pole axis, otherwise a
/// plain Gauss grid; exactness about 2 * n_per_band.
QuadratureGrid unidirectional_grid(const UnidirectionalSpec& spec, int n_per_band = 160);

/// o~1 S1 + o~3 S3, whose exterior potential vanishes.
std::vector<Vec3> make_silent_exterior(const ScalarCoeffs& S1, const ScalarCoeffs& S3, const QuadratureGrid& grid);
/// o~2 S2 + o~3 S3, whose interior potential vanishes.
std::vector<Vec3> make_silent_interior(const ScalarCoeffs& S2, const ScalarCoeffs& S3, const QuadratureGrid& grid);

/// max |V(R_eval xi_p)| over n_eval Fibonacci directions divided by ||m||
/// (both by quadrature on the grid carrying m); 0 for m = 0.
double silence_score(std::span<const Vec3> m, const QuadratureGrid& grid, double R_eval, int n_eval = 200);

/// Squared l2 norms of the three Hardy-Hodge parts.
std::array<double, 3> hardy_hodge_energy(std::span<const Vec3> m, const QuadratureGrid& grid, int L);

/// Entries v_{n,k,m,l} = integral of Y_{m,l} (v/(eta.v)) . grad* Y_{n,k}, rows
/// indexed by (n,k) and columns by (m,l), both in ScalarCoeffs flat order.
struct AdmissibilityTensor {
  int L = 0;
  Eigen::MatrixXd entries;
  double C = 0.0;      // min |eta . v| over the grid
  double v_max = 0.0;  // max |v| over the grid

  double operator()(int n, int k, int m, int l) const {
    return entries(ScalarCoeffs::offset(n, k), ScalarCoeffs::offset(m, l));
  }
};

/// Throws PreconditionViolation when min |eta.v| < 1e-6 max |v| on the grid.
AdmissibilityTensor admissibility_coeffs(const VectorField& v, int L, const QuadratureGrid& grid);

struct ExistenceResult {
  InducedModel model;
  ScalarCoeffs M1;  // radial Helmholtz scalar of Q v, degrees <= L
  ScalarCoeffs M2;  // tangential Helmholtz scalar of Q v recovered from M1
  double sigma_min = 0.0, sigma_max = 0.0;
  double relative_residual = 0.0;
  bool solved = false;
};

/// Truncated solve for an induced magnetization Q v equivalent from outside
/// to the target. Row n >= 1:
///   gamma_{n,k} / (n + 1/2) + sum v_{n,k,m,l} gamma_{m,l} / (n (n + 1/2)) = 2 <M~2, Y_{n,k}>,
/// row 0: 2 gamma_0 = 2 <M~2, Y_0>, where gamma = <M1, Y> and M~2 is the
/// variant-II scalar of the target.
ExistenceResult solve_existence_truncated(const VectorCoeffs& target, const VectorField& v, int L,
                                          const QuadratureGrid& grid);

}  // namespace spheremag
