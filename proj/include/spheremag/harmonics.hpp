#pragma once

#include <span>
#include <vector>

#include "spheremag/sphere_core.hpp"

namespace spheremag {

/// Band-limited scalar field on the unit sphere in the real orthonormal
/// basis Y_{n,k}, n = 0..L, k = 1..2n+1.
///
/// The order m in {-n..n} maps to k = m + n + 1; m > 0 is the cos(m phi)
/// harmonic, m < 0 the sin(|m| phi) harmonic. Storage is flat, ordered by
/// (n ascending, k ascending), offset n*n + k - 1.
class ScalarCoeffs {
 public:
  ScalarCoeffs() : ScalarCoeffs(0) {}
  explicit ScalarCoeffs(int L);

  int band_limit() const { return L_; }
  std::size_t size() const { return data_.size(); }

  static int offset(int n, int k) { return n * n + k - 1; }
  static int offset_nm(int n, int m) { return n * n + n + m; }

  double& operator()(int n, int k) { return data_[checked(n, k)]; }
  double operator()(int n, int k) const { return data_[checked(n, k)]; }
  double& at_nm(int n, int m) { return data_[offset_nm(n, m)]; }
  double at_nm(int n, int m) const { return data_[offset_nm(n, m)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// Copy truncated or zero-padded to band limit L.
  ScalarCoeffs with_band_limit(int L) const;
  double norm() const;

  ScalarCoeffs& operator+=(const ScalarCoeffs& o);
  ScalarCoeffs& operator-=(const ScalarCoeffs& o);
  ScalarCoeffs& operator*=(double s);
  friend ScalarCoeffs operator+(ScalarCoeffs a, const ScalarCoeffs& b) { return a += b; }
  friend ScalarCoeffs operator-(ScalarCoeffs a, const ScalarCoeffs& b) { return a -= b; }
  friend ScalarCoeffs operator*(double s, ScalarCoeffs a) { return a *= s; }

 private:
  int checked(int n, int k) const;
  int L_;
  std::vector<double> data_;
};

/// Vector field in the orthonormal Hardy-Hodge basis y~(1), y~(2), y~(3).
/// Families 2 and 3 have no degree-0 member; their degree-0 slot is held at
/// zero and is not addressable through at().
struct VectorCoeffs {
  VectorCoeffs() : VectorCoeffs(0) {}
  explicit VectorCoeffs(int L) : L(L), c1(L), c2(L), c3(L) {}

  int L;
  ScalarCoeffs c1, c2, c3;

  ScalarCoeffs& family(int i);
  const ScalarCoeffs& family(int i) const;
  double& at(int i, int n, int k);
  double at(int i, int n, int k) const;

  double norm_squared() const;
  VectorCoeffs& operator+=(const VectorCoeffs& o);
  friend VectorCoeffs operator+(VectorCoeffs a, const VectorCoeffs& b) { return a += b; }
};

/// Normalisation constants of the vector harmonics.
/// mu1 = (n+1)(2n+1), mu2 = n(2n+1), mu3 = n(n+1).
double mu(int family, int n);

/// Fully normalised associated Legendre data at one polar value t, for all
/// 0 <= m <= n <= L. Stores, per (n, m):
///   lambda  : the latitude factor of Y_{n,+-m} (sqrt(2) included for m > 0)
///   dtheta  : d lambda / d theta (theta = colatitude)
///   msin    : m * lambda / sin(theta), evaluated without dividing by sin
/// All three are regular at the poles.
class AssociatedLegendre {
 public:
  AssociatedLegendre() = default;
  AssociatedLegendre(int L, double t);

  static int tri(int n, int m) { return n * (n + 1) / 2 + m; }
  int band_limit() const { return L_; }
  double lambda(int n, int m) const { return lam_[tri(n, m)]; }
  double dtheta(int n, int m) const { return dth_[tri(n, m)]; }
  double msin(int n, int m) const { return msin_[tri(n, m)]; }

  const double* lambda_data() const { return lam_.data(); }
  const double* dtheta_data() const { return dth_.data(); }
  const double* msin_data() const { return msin_.data(); }

 private:
  int L_ = 0;
  std::vector<double> lam_, dth_, msin_;
};

/// Legendre polynomial P_n(t), |t| <= 1.
double legendre(int n, double t);

/// Real orthonormal spherical harmonic Y_{n,k}(xi).
double sph_harm(int n, int k, const UnitVector& xi);
/// Surface gradient grad* Y_{n,k}.
Vec3 sph_harm_gradient(int n, int k, const UnitVector& xi);
/// Surface curl gradient L* Y_{n,k} = xi x grad* Y_{n,k}.
Vec3 sph_harm_curl(int n, int k, const UnitVector& xi);

/// |x|^n Y_{n,k}(x/|x|); equals 0 at the origin for n > 0.
double inner_harmonic(int n, int k, const Vec3& x);
/// |x|^{-(n+1)} Y_{n,k}(x/|x|), x != 0.
double outer_harmonic(int n, int k, const Vec3& x);
/// Euclidean gradients of the inner/outer harmonics, evaluated analytically.
Vec3 inner_harmonic_gradient(int n, int k, const Vec3& x);
Vec3 outer_harmonic_gradient(int n, int k, const Vec3& x);

/// Vector spherical harmonic y~(i)_{n,k}(xi), i in {1,2,3}.
Vec3 vector_harm(int family, int n, int k, const UnitVector& xi);

/// Quadrature projection onto Y_{n,k}; needs grid exactness >= 2L.
ScalarCoeffs sht_forward(std::span<const double> samples, const QuadratureGrid& grid, int L);
std::vector<double> sht_inverse(const ScalarCoeffs& coeffs, std::span<const UnitVector> points);
std::vector<double> sht_inverse(const ScalarCoeffs& coeffs, const QuadratureGrid& grid);

/// Raw projections <xi.f, Y>, <f, grad* Y>, <f, L* Y> for n <= L.
struct VectorProjections {
  ScalarCoeffs radial, gradient, curl;
};
/// Needs grid exactness >= 2L + 2.
VectorProjections project_vector(std::span<const Vec3> samples, const QuadratureGrid& grid, int L);

/// Synthesis of xi*F1 + grad* F2 + L* F3 from coefficient containers.
std::vector<Vec3> synthesize_helmholtz(const ScalarCoeffs& F1, const ScalarCoeffs& F2,
                                       const ScalarCoeffs& F3, std::span<const UnitVector> points);
std::vector<Vec3> synthesize_helmholtz(const ScalarCoeffs& F1, const ScalarCoeffs& F2,
                                       const ScalarCoeffs& F3, const QuadratureGrid& grid);

/// c_i[n][k] = <f, y~(i)_{n,k}> by quadrature; needs exactness >= 2L + 2.
VectorCoeffs vsht_forward(std::span<const Vec3> samples, const QuadratureGrid& grid, int L);
std::vector<Vec3> vsht_inverse(const VectorCoeffs& coeffs, std::span<const UnitVector> points);
std::vector<Vec3> vsht_inverse(const VectorCoeffs& coeffs, const QuadratureGrid& grid);

/// Conversions between the orthonormal y~ coefficients and Helmholtz
/// scalars (F1, F2, F3) with f = xi F1 + grad* F2 + L* F3. F2 and F3 come
/// back with zero mean.
void vector_to_helmholtz(const VectorCoeffs& c, ScalarCoeffs& F1, ScalarCoeffs& F2, ScalarCoeffs& F3);
VectorCoeffs helmholtz_to_vector(const ScalarCoeffs& F1, const ScalarCoeffs& F2, const ScalarCoeffs& F3);

/// Legendre tables for every ring of a grid, reusable across transforms.
class GridLegendre {
 public:
  GridLegendre(const QuadratureGrid& grid, int L);
  int band_limit() const { return L_; }
  const AssociatedLegendre& ring(int j) const { return rings_[j]; }

 private:
  int L_;
  std::vector<AssociatedLegendre> rings_;
};

/// Longitude table cos(m phi_l), sin(m phi_l) for m = 0..L over a grid's
/// longitudes, stored as n_lon x (L+1) matrices.
struct LongitudeTable {
  LongitudeTable(const QuadratureGrid& grid, int L);
  Eigen::MatrixXd cos_mphi, sin_mphi;
};

}  // namespace spheremag
