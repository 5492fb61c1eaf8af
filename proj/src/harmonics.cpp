#include "spheremag/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spheremag {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_exactness(const QuadratureGrid& grid, int needed, const char* who) {
  if (grid.exactness_degree() < needed)
    throw std::invalid_argument(std::string(who) + ": grid exactness " +
                                std::to_string(grid.exactness_degree()) + " < required " +
                                std::to_string(needed));
}

void require_nk(int n, int k) {
  require(n >= 0, "spherical harmonic degree must be >= 0");
  require(k >= 1 && k <= 2 * n + 1, "spherical harmonic index k must lie in 1..2n+1");
}

// Coefficient-weighted sums over one latitude factor. For each order m the
// cosine and sine Fourier coefficients of xi.f, f_theta and f_phi.
struct RingSpectrum {
  explicit RingSpectrum(int L)
      : rc(L + 1, 0.0), rs(L + 1, 0.0), tc(L + 1, 0.0), ts(L + 1, 0.0), pc(L + 1, 0.0), ps(L + 1, 0.0) {}
  std::vector<double> rc, rs, tc, ts, pc, ps;
};

// Fourier coefficients (in m) of xi F1 + grad* F2 + L* F3 on one ring.
RingSpectrum helmholtz_ring_spectrum(const AssociatedLegendre& tab, const ScalarCoeffs& F1,
                                     const ScalarCoeffs& F2, const ScalarCoeffs& F3, int L) {
  RingSpectrum r(L);
  for (int n = 0; n <= L; ++n) {
    {
      const double lam = tab.lambda(n, 0), dth = tab.dtheta(n, 0);
      r.rc[0] += lam * F1.at_nm(n, 0);
      r.tc[0] += dth * F2.at_nm(n, 0);
      r.pc[0] += dth * F3.at_nm(n, 0);
    }
    for (int m = 1; m <= n; ++m) {
      const double lam = tab.lambda(n, m), A = tab.dtheta(n, m), B = tab.msin(n, m);
      const double a1 = F1.at_nm(n, m), b1 = F1.at_nm(n, -m);
      const double a2 = F2.at_nm(n, m), b2 = F2.at_nm(n, -m);
      const double a3 = F3.at_nm(n, m), b3 = F3.at_nm(n, -m);
      r.rc[m] += lam * a1;
      r.rs[m] += lam * b1;
      r.tc[m] += A * a2 - B * b3;
      r.ts[m] += A * b2 + B * a3;
      r.pc[m] += B * b2 + A * a3;
      r.ps[m] += -B * a2 + A * b3;
    }
  }
  return r;
}

Vec3 helmholtz_at_point(const ScalarCoeffs& F1, const ScalarCoeffs& F2, const ScalarCoeffs& F3,
                        int L, const UnitVector& xi) {
  const AssociatedLegendre tab(L, xi.t());
  const RingSpectrum r = helmholtz_ring_spectrum(tab, F1, F2, F3, L);
  const double phi = xi.longitude();
  double fr = r.rc[0], ft = r.tc[0], fp = r.pc[0];
  for (int m = 1; m <= L; ++m) {
    const double c = std::cos(m * phi), s = std::sin(m * phi);
    fr += r.rc[m] * c + r.rs[m] * s;
    ft += r.tc[m] * c + r.ts[m] * s;
    fp += r.pc[m] * c + r.ps[m] * s;
  }
  const SphericalFrame f = spherical_frame(xi);
  return fr * f.e_r + ft * f.e_theta + fp * f.e_phi;
}

int common_band_limit(const ScalarCoeffs& a, const ScalarCoeffs& b, const ScalarCoeffs& c) {
  return std::max({a.band_limit(), b.band_limit(), c.band_limit()});
}

}  // namespace

// ---------------------------------------------------------------- containers

ScalarCoeffs::ScalarCoeffs(int L) : L_(L) {
  require(L >= 0, "ScalarCoeffs: band limit must be >= 0");
  data_.assign(static_cast<std::size_t>(L + 1) * (L + 1), 0.0);
}

int ScalarCoeffs::checked(int n, int k) const {
  require(n >= 0 && n <= L_, "ScalarCoeffs: degree out of range");
  require(k >= 1 && k <= 2 * n + 1, "ScalarCoeffs: index k out of range");
  return offset(n, k);
}

ScalarCoeffs ScalarCoeffs::with_band_limit(int L) const {
  ScalarCoeffs out(L);
  const std::size_t n = std::min(out.size(), size());
  std::copy(data_.begin(), data_.begin() + n, out.data_.begin());
  return out;
}

double ScalarCoeffs::norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

ScalarCoeffs& ScalarCoeffs::operator+=(const ScalarCoeffs& o) {
  require(o.L_ == L_, "ScalarCoeffs: band limits differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ScalarCoeffs& ScalarCoeffs::operator-=(const ScalarCoeffs& o) {
  require(o.L_ == L_, "ScalarCoeffs: band limits differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ScalarCoeffs& ScalarCoeffs::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

ScalarCoeffs& VectorCoeffs::family(int i) {
  require(i >= 1 && i <= 3, "VectorCoeffs: family must be 1, 2 or 3");
  return i == 1 ? c1 : (i == 2 ? c2 : c3);
}

const ScalarCoeffs& VectorCoeffs::family(int i) const {
  require(i >= 1 && i <= 3, "VectorCoeffs: family must be 1, 2 or 3");
  return i == 1 ? c1 : (i == 2 ? c2 : c3);
}

double& VectorCoeffs::at(int i, int n, int k) {
  require(i == 1 || n >= 1, "VectorCoeffs: families 2 and 3 start at degree 1");
  return family(i)(n, k);
}

double VectorCoeffs::at(int i, int n, int k) const {
  require(i == 1 || n >= 1, "VectorCoeffs: families 2 and 3 start at degree 1");
  return family(i)(n, k);
}

double VectorCoeffs::norm_squared() const {
  const double a = c1.norm(), b = c2.norm(), c = c3.norm();
  return a * a + b * b + c * c;
}

VectorCoeffs& VectorCoeffs::operator+=(const VectorCoeffs& o) {
  c1 += o.c1;
  c2 += o.c2;
  c3 += o.c3;
  return *this;
}

double mu(int family, int n) {
  switch (family) {
    case 1: return (n + 1.0) * (2.0 * n + 1.0);
    case 2: return n * (2.0 * n + 1.0);
    case 3: return n * (n + 1.0);
    default: throw std::invalid_argument("mu: family must be 1, 2 or 3");
  }
}

// ------------------------------------------------------------------ Legendre

AssociatedLegendre::AssociatedLegendre(int L, double t) : L_(L) {
  require(L >= 0, "AssociatedLegendre: band limit must be >= 0");
  require(t >= -1.0 && t <= 1.0, "AssociatedLegendre: t must lie in [-1, 1]");
  const std::size_t sz = static_cast<std::size_t>(L + 1) * (L + 2) / 2;
  lam_.assign(sz, 0.0);
  dth_.assign(sz, 0.0);
  msin_.assign(sz, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  const double c0 = 1.0 / std::sqrt(4.0 * kPi);

  // m = 0: fully normalised Legendre functions
  {
    double p2 = 0.0, p1 = c0;
    lam_[tri(0, 0)] = c0;
    for (int n = 1; n <= L; ++n) {
      double p;
      if (n == 1) {
        p = std::sqrt(3.0) * t * c0;
      } else {
        const double nn = n;
        const double a = std::sqrt((4.0 * nn * nn - 1.0) / (nn * nn));
        const double b = std::sqrt((nn - 1.0) * (nn - 1.0) * (2.0 * nn + 1.0) / (nn * nn * (2.0 * nn - 3.0)));
        p = a * t * p1 - b * p2;
      }
      lam_[tri(n, 0)] = p;
      p2 = p1;
      p1 = p;
    }
  }

  // m >= 1 on the scaled functions P~ = P-bar / sin(theta), which satisfy the
  // same three-term recurrence in n and are regular at the poles.
  std::vector<double> col(L + 1, 0.0);
  double pmm = std::sqrt(1.5) * c0;
  for (int m = 1; m <= L; ++m) {
    if (m > 1) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    col[m] = pmm;
    if (m + 1 <= L) col[m + 1] = std::sqrt(2.0 * m + 3.0) * t * pmm;
    for (int n = m + 2; n <= L; ++n) {
      const double nn = n, mm = m;
      const double d = nn * nn - mm * mm;
      const double a = std::sqrt((4.0 * nn * nn - 1.0) / d);
      const double b = std::sqrt(((nn - 1.0) * (nn - 1.0) - mm * mm) * (2.0 * nn + 1.0) / (d * (2.0 * nn - 3.0)));
      col[n] = a * t * col[n - 1] - b * col[n - 2];
    }
    for (int n = m; n <= L; ++n) {
      const double prev = n > m ? col[n - 1] : 0.0;
      const double nn = n, mm = m;
      const double f = std::sqrt((2.0 * nn + 1.0) * (nn * nn - mm * mm) / (2.0 * nn - 1.0));
      lam_[tri(n, m)] = kSqrt2 * s * col[n];
      msin_[tri(n, m)] = kSqrt2 * mm * col[n];
      dth_[tri(n, m)] = kSqrt2 * (nn * t * col[n] - f * prev);
    }
    if (m == 1)
      for (int n = 1; n <= L; ++n) dth_[tri(n, 0)] = -std::sqrt(n * (n + 1.0)) * s * col[n];
  }
}

double legendre(int n, double t) {
  require(n >= 0, "legendre: degree must be >= 0");
  require(t >= -1.0 && t <= 1.0, "legendre: t must lie in [-1, 1]");
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// ------------------------------------------------------- pointwise harmonics

namespace {

struct HarmonicParts {
  double value;  // Y
  double dtheta;  // dY/dtheta
  double dphi_over_sin;  // (1/sin theta) dY/dphi
};

HarmonicParts harmonic_parts(int n, int k, const UnitVector& xi) {
  require_nk(n, k);
  const int m = k - n - 1;
  const int am = std::abs(m);
  const AssociatedLegendre tab(n, xi.t());
  const double phi = xi.longitude();
  const double lam = tab.lambda(n, am), A = tab.dtheta(n, am), B = tab.msin(n, am);
  if (m == 0) return {lam, A, 0.0};
  const double c = std::cos(am * phi), s = std::sin(am * phi);
  if (m > 0) return {lam * c, A * c, -B * s};
  return {lam * s, A * s, B * c};
}

}  // namespace

double sph_harm(int n, int k, const UnitVector& xi) { return harmonic_parts(n, k, xi).value; }

Vec3 sph_harm_gradient(int n, int k, const UnitVector& xi) {
  const HarmonicParts p = harmonic_parts(n, k, xi);
  const SphericalFrame f = spherical_frame(xi);
  return p.dtheta * f.e_theta + p.dphi_over_sin * f.e_phi;
}

Vec3 sph_harm_curl(int n, int k, const UnitVector& xi) {
  return xi.vec().cross(sph_harm_gradient(n, k, xi));
}

double inner_harmonic(int n, int k, const Vec3& x) {
  require_nk(n, k);
  const double r = x.norm();
  if (r == 0.0) return n == 0 ? 1.0 / std::sqrt(4.0 * kPi) : 0.0;
  return std::pow(r, n) * sph_harm(n, k, UnitVector(x));
}

double outer_harmonic(int n, int k, const Vec3& x) {
  require_nk(n, k);
  const double r = x.norm();
  require(r > 0.0, "outer_harmonic: x must be nonzero");
  return std::pow(r, -(n + 1)) * sph_harm(n, k, UnitVector(x));
}

Vec3 inner_harmonic_gradient(int n, int k, const Vec3& x) {
  require_nk(n, k);
  const double r = x.norm();
  if (n == 0) return Vec3::Zero();
  if (r == 0.0) {
    if (n > 1) return Vec3::Zero();
    // degree 1: the gradient is constant; evaluate it at any direction
    const UnitVector e(0, 0, 1);
    return sph_harm(1, k, e) * e.vec() + sph_harm_gradient(1, k, e);
  }
  const UnitVector xi(x);
  return std::pow(r, n - 1) * (n * sph_harm(n, k, xi) * xi.vec() + sph_harm_gradient(n, k, xi));
}

Vec3 outer_harmonic_gradient(int n, int k, const Vec3& x) {
  require_nk(n, k);
  const double r = x.norm();
  require(r > 0.0, "outer_harmonic_gradient: x must be nonzero");
  const UnitVector xi(x);
  return std::pow(r, -(n + 2)) *
         (-(n + 1.0) * sph_harm(n, k, xi) * xi.vec() + sph_harm_gradient(n, k, xi));
}

Vec3 vector_harm(int family, int n, int k, const UnitVector& xi) {
  require(family >= 1 && family <= 3, "vector_harm: family must be 1, 2 or 3");
  require(family == 1 ? n >= 0 : n >= 1, "vector_harm: families 2 and 3 need n >= 1");
  require_nk(n, k);
  const double y = sph_harm(n, k, xi);
  const Vec3 g = sph_harm_gradient(n, k, xi);
  switch (family) {
    case 1: return ((n + 1.0) * y * xi.vec() - g) / std::sqrt(mu(1, n));
    case 2: return (n * y * xi.vec() + g) / std::sqrt(mu(2, n));
    default: return xi.vec().cross(g) / std::sqrt(mu(3, n));
  }
}

// ------------------------------------------------------------ grid machinery

GridLegendre::GridLegendre(const QuadratureGrid& grid, int L) : L_(L) {
  rings_.reserve(grid.n_rings());
  for (double t : grid.ring_t()) rings_.emplace_back(L, t);
}

LongitudeTable::LongitudeTable(const QuadratureGrid& grid, int L)
    : cos_mphi(grid.n_lon(), L + 1), sin_mphi(grid.n_lon(), L + 1) {
  for (int l = 0; l < grid.n_lon(); ++l) {
    const double phi = grid.longitude(l);
    for (int m = 0; m <= L; ++m) {
      cos_mphi(l, m) = std::cos(m * phi);
      sin_mphi(l, m) = std::sin(m * phi);
    }
  }
}

ScalarCoeffs sht_forward(std::span<const double> samples, const QuadratureGrid& grid, int L) {
  require(L >= 0, "sht_forward: band limit must be >= 0");
  require(samples.size() == grid.size(), "sht_forward: sample count does not match grid");
  require_exactness(grid, 2 * L, "sht_forward");
  const GridLegendre gl(grid, L);
  const LongitudeTable lt(grid, L);
  const Eigen::Map<const Eigen::MatrixXd> F(samples.data(), grid.n_lon(), grid.n_rings());
  const Eigen::MatrixXd C = lt.cos_mphi.transpose() * F;
  const Eigen::MatrixXd S = lt.sin_mphi.transpose() * F;
  const double dphi = 2.0 * kPi / grid.n_lon();
  ScalarCoeffs out(L);
  for (int j = 0; j < grid.n_rings(); ++j) {
    const double w = grid.ring_weight()[j] * dphi;
    const AssociatedLegendre& tab = gl.ring(j);
    for (int n = 0; n <= L; ++n) {
      out.at_nm(n, 0) += w * tab.lambda(n, 0) * C(0, j);
      for (int m = 1; m <= n; ++m) {
        const double lam = w * tab.lambda(n, m);
        out.at_nm(n, m) += lam * C(m, j);
        out.at_nm(n, -m) += lam * S(m, j);
      }
    }
  }
  return out;
}

std::vector<double> sht_inverse(const ScalarCoeffs& coeffs, std::span<const UnitVector> points) {
  const int L = coeffs.band_limit();
  std::vector<double> out;
  out.reserve(points.size());
  for (const UnitVector& xi : points) {
    const AssociatedLegendre tab(L, xi.t());
    const double phi = xi.longitude();
    double v = 0.0;
    for (int n = 0; n <= L; ++n) {
      v += tab.lambda(n, 0) * coeffs.at_nm(n, 0);
      for (int m = 1; m <= n; ++m)
        v += tab.lambda(n, m) * (coeffs.at_nm(n, m) * std::cos(m * phi) + coeffs.at_nm(n, -m) * std::sin(m * phi));
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> sht_inverse(const ScalarCoeffs& coeffs, const QuadratureGrid& grid) {
  const int L = coeffs.band_limit();
  const GridLegendre gl(grid, L);
  const LongitudeTable lt(grid, L);
  std::vector<double> out(grid.size());
  Eigen::VectorXd a(L + 1), b(L + 1);
  for (int j = 0; j < grid.n_rings(); ++j) {
    a.setZero();
    b.setZero();
    const AssociatedLegendre& tab = gl.ring(j);
    for (int n = 0; n <= L; ++n) {
      a(0) += tab.lambda(n, 0) * coeffs.at_nm(n, 0);
      for (int m = 1; m <= n; ++m) {
        a(m) += tab.lambda(n, m) * coeffs.at_nm(n, m);
        b(m) += tab.lambda(n, m) * coeffs.at_nm(n, -m);
      }
    }
    Eigen::Map<Eigen::VectorXd> ring(out.data() + static_cast<std::size_t>(j) * grid.n_lon(), grid.n_lon());
    ring = lt.cos_mphi * a + lt.sin_mphi * b;
  }
  return out;
}

VectorProjections project_vector(std::span<const Vec3> samples, const QuadratureGrid& grid, int L) {
  require(L >= 0, "project_vector: band limit must be >= 0");
  require(samples.size() == grid.size(), "project_vector: sample count does not match grid");
  require_exactness(grid, 2 * L + 2, "project_vector");
  const int nl = grid.n_lon(), nr = grid.n_rings();
  const LongitudeTable lt(grid, L);
  Eigen::MatrixXd fr(nl, nr), ft(nl, nr), fp(nl, nr);
  for (int j = 0; j < nr; ++j) {
    const double t = grid.ring_t()[j];
    const double s = std::sqrt(1.0 - t * t);
    for (int l = 0; l < nl; ++l) {
      const double phi = grid.longitude(l);
      const double cp = std::cos(phi), sp = std::sin(phi);
      const Vec3& f = samples[static_cast<std::size_t>(j) * nl + l];
      const Vec3 er(s * cp, s * sp, t), et(t * cp, t * sp, -s), ep(-sp, cp, 0.0);
      fr(l, j) = f.dot(er);
      ft(l, j) = f.dot(et);
      fp(l, j) = f.dot(ep);
    }
  }
  const Eigen::MatrixXd Cr = lt.cos_mphi.transpose() * fr, Sr = lt.sin_mphi.transpose() * fr;
  const Eigen::MatrixXd Ct = lt.cos_mphi.transpose() * ft, St = lt.sin_mphi.transpose() * ft;
  const Eigen::MatrixXd Cp = lt.cos_mphi.transpose() * fp, Sp = lt.sin_mphi.transpose() * fp;
  const double dphi = 2.0 * kPi / nl;
  VectorProjections out{ScalarCoeffs(L), ScalarCoeffs(L), ScalarCoeffs(L)};
  for (int j = 0; j < nr; ++j) {
    const double w = grid.ring_weight()[j] * dphi;
    const AssociatedLegendre tab(L, grid.ring_t()[j]);
    for (int n = 0; n <= L; ++n) {
      const double lam0 = w * tab.lambda(n, 0), A0 = w * tab.dtheta(n, 0);
      out.radial.at_nm(n, 0) += lam0 * Cr(0, j);
      out.gradient.at_nm(n, 0) += A0 * Ct(0, j);
      out.curl.at_nm(n, 0) += A0 * Cp(0, j);
      for (int m = 1; m <= n; ++m) {
        const double lam = w * tab.lambda(n, m), A = w * tab.dtheta(n, m), B = w * tab.msin(n, m);
        out.radial.at_nm(n, m) += lam * Cr(m, j);
        out.radial.at_nm(n, -m) += lam * Sr(m, j);
        out.gradient.at_nm(n, m) += A * Ct(m, j) - B * Sp(m, j);
        out.gradient.at_nm(n, -m) += A * St(m, j) + B * Cp(m, j);
        out.curl.at_nm(n, m) += A * Cp(m, j) + B * St(m, j);
        out.curl.at_nm(n, -m) += A * Sp(m, j) - B * Ct(m, j);
      }
    }
  }
  return out;
}

std::vector<Vec3> synthesize_helmholtz(const ScalarCoeffs& F1, const ScalarCoeffs& F2,
                                       const ScalarCoeffs& F3, std::span<const UnitVector> points) {
  const int L = common_band_limit(F1, F2, F3);
  const ScalarCoeffs a = F1.with_band_limit(L), b = F2.with_band_limit(L), c = F3.with_band_limit(L);
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const UnitVector& xi : points) out.push_back(helmholtz_at_point(a, b, c, L, xi));
  return out;
}

std::vector<Vec3> synthesize_helmholtz(const ScalarCoeffs& F1, const ScalarCoeffs& F2,
                                       const ScalarCoeffs& F3, const QuadratureGrid& grid) {
  const int L = common_band_limit(F1, F2, F3);
  const ScalarCoeffs a = F1.with_band_limit(L), b = F2.with_band_limit(L), c = F3.with_band_limit(L);
  const LongitudeTable lt(grid, L);
  const int nl = grid.n_lon();
  std::vector<Vec3> out(grid.size());
  for (int j = 0; j < grid.n_rings(); ++j) {
    const double t = grid.ring_t()[j];
    const double s = std::sqrt(1.0 - t * t);
    const AssociatedLegendre tab(L, t);
    const RingSpectrum r = helmholtz_ring_spectrum(tab, a, b, c, L);
    const auto vec = [](const std::vector<double>& v) {
      return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    };
    const Eigen::VectorXd fr = lt.cos_mphi * vec(r.rc) + lt.sin_mphi * vec(r.rs);
    const Eigen::VectorXd ft = lt.cos_mphi * vec(r.tc) + lt.sin_mphi * vec(r.ts);
    const Eigen::VectorXd fp = lt.cos_mphi * vec(r.pc) + lt.sin_mphi * vec(r.ps);
    for (int l = 0; l < nl; ++l) {
      const double phi = grid.longitude(l);
      const double cp = std::cos(phi), sp = std::sin(phi);
      const Vec3 er(s * cp, s * sp, t), et(t * cp, t * sp, -s), ep(-sp, cp, 0.0);
      out[static_cast<std::size_t>(j) * nl + l] = fr(l) * er + ft(l) * et + fp(l) * ep;
    }
  }
  return out;
}

void vector_to_helmholtz(const VectorCoeffs& c, ScalarCoeffs& F1, ScalarCoeffs& F2, ScalarCoeffs& F3) {
  const int L = c.L;
  F1 = ScalarCoeffs(L);
  F2 = ScalarCoeffs(L);
  F3 = ScalarCoeffs(L);
  for (int n = 0; n <= L; ++n) {
    const double s1 = 1.0 / std::sqrt(mu(1, n));
    const double s2 = n > 0 ? 1.0 / std::sqrt(mu(2, n)) : 0.0;
    const double s3 = n > 0 ? 1.0 / std::sqrt(mu(3, n)) : 0.0;
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int i = ScalarCoeffs::offset(n, k);
      const double a = c.c1.data()[i], b = c.c2.data()[i], d = c.c3.data()[i];
      F1.data()[i] = (n + 1.0) * s1 * a + n * s2 * b;
      F2.data()[i] = n > 0 ? -s1 * a + s2 * b : 0.0;
      F3.data()[i] = s3 * d;
    }
  }
}

VectorCoeffs helmholtz_to_vector(const ScalarCoeffs& F1, const ScalarCoeffs& F2, const ScalarCoeffs& F3) {
  const int L = common_band_limit(F1, F2, F3);
  const ScalarCoeffs a = F1.with_band_limit(L), b = F2.with_band_limit(L), d = F3.with_band_limit(L);
  VectorCoeffs out(L);
  for (int n = 0; n <= L; ++n) {
    const double nn1 = n * (n + 1.0);
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int i = ScalarCoeffs::offset(n, k);
      out.c1.data()[i] = ((n + 1.0) * a.data()[i] - nn1 * b.data()[i]) / std::sqrt(mu(1, n));
      if (n > 0) {
        out.c2.data()[i] = (n * a.data()[i] + nn1 * b.data()[i]) / std::sqrt(mu(2, n));
        out.c3.data()[i] = nn1 * d.data()[i] / std::sqrt(mu(3, n));
      }
    }
  }
  return out;
}

VectorCoeffs vsht_forward(std::span<const Vec3> samples, const QuadratureGrid& grid, int L) {
  const VectorProjections p = project_vector(samples, grid, L);
  VectorCoeffs out(L);
  for (int n = 0; n <= L; ++n) {
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int i = ScalarCoeffs::offset(n, k);
      const double R = p.radial.data()[i], G = p.gradient.data()[i], C = p.curl.data()[i];
      out.c1.data()[i] = ((n + 1.0) * R - G) / std::sqrt(mu(1, n));
      if (n > 0) {
        out.c2.data()[i] = (n * R + G) / std::sqrt(mu(2, n));
        out.c3.data()[i] = C / std::sqrt(mu(3, n));
      }
    }
  }
  return out;
}

std::vector<Vec3> vsht_inverse(const VectorCoeffs& coeffs, std::span<const UnitVector> points) {
  ScalarCoeffs F1, F2, F3;
  vector_to_helmholtz(coeffs, F1, F2, F3);
  return synthesize_helmholtz(F1, F2, F3, points);
}

std::vector<Vec3> vsht_inverse(const VectorCoeffs& coeffs, const QuadratureGrid& grid) {
  ScalarCoeffs F1, F2, F3;
  vector_to_helmholtz(coeffs, F1, F2, F3);
  return synthesize_helmholtz(F1, F2, F3, grid);
}

}  // namespace spheremag
