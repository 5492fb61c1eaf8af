#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spheremag/harmonics.hpp"

namespace spheremag {

using ScalarField = std::function<double(const UnitVector&)>;
using VectorField = std::function<Vec3(const UnitVector&)>;

/// Samples of a field on the nodes of a grid.
std::vector<double> sample(const ScalarField& f, const QuadratureGrid& grid);
std::vector<Vec3> sample(const VectorField& f, const QuadratureGrid& grid);

/// V(x) = 1/(4 pi) * integral over the unit sphere of m(eta).(x - eta)/|x - eta|^3,
/// by quadrature on the grid carrying the samples of m. |x| must differ from 1.
double potential_direct(std::span<const Vec3> m, const QuadratureGrid& grid, const Vec3& x);
std::vector<double> potential_direct(std::span<const Vec3> m, const QuadratureGrid& grid,
                                     std::span<const Vec3> xs);

/// Series forms of the same potential. Outside the unit sphere only the c2
/// family contributes, inside only c1.
double potential_exterior_spectral(const VectorCoeffs& c, const Vec3& x);
double potential_interior_spectral(const VectorCoeffs& c, const Vec3& x);

/// Abel-Poisson kernel (1 - h^2) / (1 + h^2 - 2 h t)^{3/2}.
double abel_poisson(double t, double h);
/// Truncated Legendre series sum_{n <= L} (2n+1) h^n P_n(t).
double abel_poisson_series(double t, double h, int L);
/// Smallest L with h^L <= tol.
int abel_poisson_truncation(double h, double tol = 1e-12);

class AbelPoissonBasis {
 public:
  AbelPoissonBasis(PointSet centers, double h);

  const PointSet& centers() const { return centers_; }
  std::size_t size() const { return centers_.size(); }
  double h() const { return h_; }
  int truncation() const { return L_K_; }

  double kernel(std::size_t i, const UnitVector& xi) const;
  /// Q(xi) = sum_i gamma_i K(xi . xi_i).
  double evaluate(std::span<const double> gamma, const UnitVector& xi) const;
  /// Kernel matrix K(xi_p . xi_i), one row per point.
  Eigen::MatrixXd kernel_matrix(std::span<const UnitVector> points) const;

 private:
  PointSet centers_;
  double h_;
  int L_K_;
};

/// Exactness used for kernel-potential quadrature at radius R:
/// ceil(log(1e-12) / log(max(h, q))) + 4, q = 1/R outside and R inside, capped at 600.
int kernel_quadrature_degree(double h, double R);

/// V_n(x) for the magnetization K(. xi_n) v, by direct quadrature on a
/// Gauss grid of kernel_quadrature_degree(h, |x|) (or on the given grid).
double kernel_potential(const UnitVector& center, const AbelPoissonBasis& basis, const VectorField& v,
                        const Vec3& x);
double kernel_potential(const UnitVector& center, const AbelPoissonBasis& basis, const VectorField& v,
                        const Vec3& x, const QuadratureGrid& grid);

/// All kernel potentials V_n(R xi_p) at once, one row per direction and one
/// column per centre.
///
/// Each centre is handled in a frame where it sits at the north pole, so the
/// kernel is zonal. When the Cartesian components of v are polynomials of
/// degree <= v_degree, the longitudinal content of K v is bounded by
/// v_degree + 1 and a narrow source grid integrates it exactly; the
/// potential series is then truncated where (h/R)^n (or (hR)^n inside)
/// falls below tol.
Eigen::MatrixXd kernel_potentials(const AbelPoissonBasis& basis, const VectorField& v, int v_degree, double R,
                                  std::span<const UnitVector> directions, double tol = 1e-13);

}  // namespace spheremag
