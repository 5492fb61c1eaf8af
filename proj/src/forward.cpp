#include "spheremag/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spheremag {

namespace {

constexpr double kPi = std::numbers::pi;

void check_h(double h) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("Abel-Poisson parameter h must lie in (0, 1)");
}

void check_off_sphere(const Vec3& x) {
  if (std::abs(x.norm() - 1.0) < 1e-12)
    throw std::invalid_argument("evaluation point must not lie on the unit sphere");
}

// sum_k c[n][k] Y_{n,k} at a point with tabulated Legendre data
double degree_sum(const ScalarCoeffs& c, const AssociatedLegendre& tab, double phi, int n) {
  double v = tab.lambda(n, 0) * c.at_nm(n, 0);
  for (int m = 1; m <= n; ++m)
    v += tab.lambda(n, m) * (c.at_nm(n, m) * std::cos(m * phi) + c.at_nm(n, -m) * std::sin(m * phi));
  return v;
}

// Recurrence coefficients for the fully normalised Legendre columns m <= mmax.
struct LegendreColumns {
  LegendreColumns(int L, int mmax) : L(L), mmax(mmax), a((mmax + 1) * (L + 1)), b((mmax + 1) * (L + 1)) {
    for (int m = 0; m <= mmax; ++m)
      for (int n = m + 2; n <= L; ++n) {
        const double nn = n, mm = m, d = nn * nn - mm * mm;
        a[idx(m, n)] = std::sqrt((4.0 * nn * nn - 1.0) / d);
        b[idx(m, n)] = std::sqrt(((nn - 1.0) * (nn - 1.0) - mm * mm) * (2.0 * nn + 1.0) / (d * (2.0 * nn - 3.0)));
      }
  }
  int idx(int m, int n) const { return m * (L + 1) + n; }

  // lambda(n, m) for m <= mmax into out[idx(m, n)] (entries n < m untouched)
  void eval(double t, std::vector<double>& out) const {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    double pmm = 1.0 / std::sqrt(4.0 * kPi);
    for (int m = 0; m <= mmax && m <= L; ++m) {
      if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
      const double scale = m == 0 ? 1.0 : std::numbers::sqrt2;
      double p2 = pmm, p1 = 0.0;
      out[idx(m, m)] = scale * pmm;
      if (m + 1 <= L) {
        p1 = std::sqrt(2.0 * m + 3.0) * t * pmm;
        out[idx(m, m + 1)] = scale * p1;
      }
      for (int n = m + 2; n <= L; ++n) {
        const double p = a[idx(m, n)] * t * p1 - b[idx(m, n)] * p2;
        out[idx(m, n)] = scale * p;
        p2 = p1;
        p1 = p;
      }
    }
  }

  int L, mmax;
  std::vector<double> a, b;
};

}  // namespace

std::vector<double> sample(const ScalarField& f, const QuadratureGrid& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

std::vector<Vec3> sample(const VectorField& f, const QuadratureGrid& grid) {
  std::vector<Vec3> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

double potential_direct(std::span<const Vec3> m, const QuadratureGrid& grid, const Vec3& x) {
  if (m.size() != grid.size()) throw std::invalid_argument("potential_direct: sample count does not match grid");
  check_off_sphere(x);
  double sum = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Vec3& mi = m[i];
    if (mi.x() == 0.0 && mi.y() == 0.0 && mi.z() == 0.0) continue;
    const Vec3 d = x - grid.node(i).vec();
    const double r2 = d.squaredNorm();
    sum += grid.weight(i) * mi.dot(d) / (r2 * std::sqrt(r2));
  }
  return sum / (4.0 * kPi);
}

std::vector<double> potential_direct(std::span<const Vec3> m, const QuadratureGrid& grid,
                                     std::span<const Vec3> xs) {
  if (m.size() != grid.size()) throw std::invalid_argument("potential_direct: sample count does not match grid");
  for (const Vec3& x : xs) check_off_sphere(x);
  // compact the nonzero sources once
  std::vector<Vec3> src, mom;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].x() == 0.0 && m[i].y() == 0.0 && m[i].z() == 0.0) continue;
    src.push_back(grid.node(i).vec());
    mom.push_back(grid.weight(i) * m[i]);
  }
  std::vector<double> out(xs.size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const Vec3& x = xs[p];
    double sum = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      const Vec3 d = x - src[i];
      const double r2 = d.squaredNorm();
      sum += mom[i].dot(d) / (r2 * std::sqrt(r2));
    }
    out[p] = sum / (4.0 * kPi);
  }
  return out;
}

double potential_exterior_spectral(const VectorCoeffs& c, const Vec3& x) {
  const double r = x.norm();
  if (!(r > 1.0)) throw std::invalid_argument("potential_exterior_spectral: |x| must exceed 1");
  const UnitVector xi(x);
  const AssociatedLegendre tab(c.L, xi.t());
  const double phi = xi.longitude();
  double v = 0.0, rp = 1.0 / r;
  for (int n = 1; n <= c.L; ++n) {
    rp /= r;
    v += std::sqrt(n * (2.0 * n + 1.0)) / (2.0 * n + 1.0) * rp * degree_sum(c.c2, tab, phi, n);
  }
  return v;
}

double potential_interior_spectral(const VectorCoeffs& c, const Vec3& x) {
  const double r = x.norm();
  if (!(r < 1.0)) throw std::invalid_argument("potential_interior_spectral: |x| must be below 1");
  const UnitVector xi = r > 0.0 ? UnitVector(x) : UnitVector(0, 0, 1);
  const AssociatedLegendre tab(c.L, xi.t());
  const double phi = xi.longitude();
  double v = 0.0, rp = 1.0;
  for (int n = 0; n <= c.L; ++n) {
    if (n > 0) rp *= r;
    if (rp == 0.0) break;
    v -= std::sqrt((n + 1.0) * (2.0 * n + 1.0)) / (2.0 * n + 1.0) * rp * degree_sum(c.c1, tab, phi, n);
  }
  return v;
}

double abel_poisson(double t, double h) {
  check_h(h);
  if (!(t >= -1.0 - 1e-12 && t <= 1.0 + 1e-12)) throw std::invalid_argument("abel_poisson: t must lie in [-1, 1]");
  t = std::clamp(t, -1.0, 1.0);
  const double q = 1.0 + h * h - 2.0 * h * t;
  return (1.0 - h * h) / (q * std::sqrt(q));
}

double abel_poisson_series(double t, double h, int L) {
  check_h(h);
  if (L < 0) throw std::invalid_argument("abel_poisson_series: L must be >= 0");
  if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("abel_poisson_series: t must lie in [-1, 1]");
  double p0 = 1.0, p1 = t, hn = 1.0, sum = 1.0;
  for (int n = 1; n <= L; ++n) {
    hn *= h;
    if (n >= 2) {
      const double p2 = ((2.0 * n - 1.0) * t * p1 - (n - 1.0) * p0) / n;
      p0 = p1;
      p1 = p2;
    }
    sum += (2.0 * n + 1.0) * hn * p1;
  }
  return sum;
}

int abel_poisson_truncation(double h, double tol) {
  check_h(h);
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("truncation tolerance must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log(tol) / std::log(h)));
}

AbelPoissonBasis::AbelPoissonBasis(PointSet centers, double h)
    : centers_(std::move(centers)), h_(h), L_K_(abel_poisson_truncation(h)) {}

double AbelPoissonBasis::kernel(std::size_t i, const UnitVector& xi) const {
  return abel_poisson(xi.dot(centers_[i]), h_);
}

double AbelPoissonBasis::evaluate(std::span<const double> gamma, const UnitVector& xi) const {
  if (gamma.size() != size()) throw std::invalid_argument("AbelPoissonBasis: coefficient count mismatch");
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) v += gamma[i] * kernel(i, xi);
  return v;
}

Eigen::MatrixXd AbelPoissonBasis::kernel_matrix(std::span<const UnitVector> points) const {
  Eigen::MatrixXd K(points.size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t p = 0; p < points.size(); ++p) K(p, i) = kernel(i, points[p]);
  return K;
}

int kernel_quadrature_degree(double h, double R) {
  check_h(h);
  if (!(R > 0.0) || std::abs(R - 1.0) < 1e-12) throw std::invalid_argument("radius must be positive and differ from 1");
  // aliasing of the product rule decays like the slower of h^n and q^n
  const double q = std::max(h, R > 1.0 ? 1.0 / R : R);
  const int d = static_cast<int>(std::ceil(std::log(1e-12) / std::log(q))) + 4;
  return std::min(d, 600);
}

double kernel_potential(const UnitVector& center, const AbelPoissonBasis& basis, const VectorField& v,
                        const Vec3& x) {
  check_off_sphere(x);
  return kernel_potential(center, basis, v, x, gauss_grid_for_degree(kernel_quadrature_degree(basis.h(), x.norm())));
}

double kernel_potential(const UnitVector& center, const AbelPoissonBasis& basis, const VectorField& v,
                        const Vec3& x, const QuadratureGrid& grid) {
  std::vector<Vec3> m(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    m[i] = abel_poisson(grid.node(i).dot(center), basis.h()) * v(grid.node(i));
  return potential_direct(m, grid, x);
}

Eigen::MatrixXd kernel_potentials(const AbelPoissonBasis& basis, const VectorField& v, int v_degree, double R,
                                  std::span<const UnitVector> directions, double tol) {
  if (v_degree < 0) throw std::invalid_argument("kernel_potentials: v_degree must be >= 0");
  if (!(R > 0.0) || std::abs(R - 1.0) < 0.01)
    throw std::invalid_argument("kernel_potentials: radius must be positive and away from 1");
  const double h = basis.h();
  const bool exterior = R > 1.0;
  const double q = exterior ? h / R : h * R;
  const int Ls = static_cast<int>(std::ceil(std::log(tol) / std::log(q)));
  const int J = abel_poisson_truncation(h, tol);
  const int mmax = v_degree + 1;
  const int n_lon = 2 * mmax + 2;
  const int n_polar = (Ls + J + v_degree + 2) / 2 + 2;

  std::vector<double> rt, rw;
  gauss_legendre(n_polar, -1.0, 1.0, rt, rw);
  const double dphi = 2.0 * kPi / n_lon;

  // radial and gradient weights of the potential coefficient at degree n
  std::vector<double> cr(Ls + 1), cg(Ls + 1);
  for (int n = 0; n <= Ls; ++n) {
    const double rad = exterior ? std::pow(R, -(n + 1.0)) : std::pow(R, n);
    cr[n] = (exterior ? n : -(n + 1.0)) * rad / (2.0 * n + 1.0);
    cg[n] = rad / (2.0 * n + 1.0);
  }

  // per-ring Legendre data restricted to m <= mmax, laid out [ring][m][n]
  const int stride_m = Ls + 1, stride_r = (mmax + 1) * stride_m;
  std::vector<double> lam(n_polar * stride_r, 0.0), dth(lam.size(), 0.0), msn(lam.size(), 0.0);
  std::vector<double> kern(n_polar), sinr(n_polar);
  for (int j = 0; j < n_polar; ++j) {
    const AssociatedLegendre tab(Ls, rt[j]);
    for (int m = 0; m <= std::min(mmax, Ls); ++m)
      for (int n = m; n <= Ls; ++n) {
        const int i = j * stride_r + m * stride_m + n;
        lam[i] = tab.lambda(n, m);
        dth[i] = tab.dtheta(n, m);
        msn[i] = tab.msin(n, m);
      }
    kern[j] = abel_poisson(rt[j], h) * rw[j] * dphi;
    sinr[j] = std::sqrt(1.0 - rt[j] * rt[j]);
  }
  std::vector<double> cphi(n_lon), sphi(n_lon);
  Eigen::MatrixXd cm(n_lon, mmax + 1), sm(n_lon, mmax + 1);
  for (int l = 0; l < n_lon; ++l) {
    const double phi = l * dphi;
    cphi[l] = std::cos(phi);
    sphi[l] = std::sin(phi);
    for (int m = 0; m <= mmax; ++m) {
      cm(l, m) = std::cos(m * phi);
      sm(l, m) = std::sin(m * phi);
    }
  }

  const LegendreColumns cols(Ls, mmax);
  std::vector<double> colbuf((mmax + 1) * (Ls + 1), 0.0);
  Eigen::MatrixXd out(directions.size(), basis.size());
  Eigen::MatrixXd Pc(mmax + 1, Ls + 1), Ps(mmax + 1, Ls + 1);
  Eigen::MatrixXd fr(n_lon, 1), ft(n_lon, 1), fp(n_lon, 1);

  for (std::size_t c = 0; c < basis.size(); ++c) {
    const Eigen::Matrix3d rot = rotation_from_z(basis.centers()[c]);
    Pc.setZero();
    Ps.setZero();
    for (int j = 0; j < n_polar; ++j) {
      const double t = rt[j], s = sinr[j];
      for (int l = 0; l < n_lon; ++l) {
        const Vec3 local(s * cphi[l], s * sphi[l], t);
        const Vec3 vl = rot.transpose() * v(UnitVector::from_normalized(rot * local));
        fr(l) = vl.dot(local);
        ft(l) = vl.dot(Vec3(t * cphi[l], t * sphi[l], -s));
        fp(l) = vl.dot(Vec3(-sphi[l], cphi[l], 0.0));
      }
      const Eigen::VectorXd Cr = cm.transpose() * fr, Sr = sm.transpose() * fr;
      const Eigen::VectorXd Ct = cm.transpose() * ft, St = sm.transpose() * ft;
      const Eigen::VectorXd Cp = cm.transpose() * fp, Sp = sm.transpose() * fp;
      const double w = kern[j];
      for (int m = 0; m <= std::min(mmax, Ls); ++m) {
        const int base = j * stride_r + m * stride_m;
        for (int n = m; n <= Ls; ++n) {
          const double L0 = lam[base + n], A = dth[base + n], B = msn[base + n];
          const double rc = L0 * Cr(m), gc = m == 0 ? A * Ct(0) : A * Ct(m) - B * Sp(m);
          Pc(m, n) += w * (cr[n] * rc + cg[n] * gc);
          if (m > 0) {
            const double rs = L0 * Sr(m), gs = A * St(m) + B * Cp(m);
            Ps(m, n) += w * (cr[n] * rs + cg[n] * gs);
          }
        }
      }
    }
    for (std::size_t p = 0; p < directions.size(); ++p) {
      const Vec3 local = rot.transpose() * directions[p].vec();
      const double t = std::clamp(local.z(), -1.0, 1.0);
      const double phi = std::atan2(local.y(), local.x());
      cols.eval(t, colbuf);
      double val = 0.0;
      for (int m = 0; m <= std::min(mmax, Ls); ++m) {
        double a = 0.0, b = 0.0;
        for (int n = m; n <= Ls; ++n) {
          const double L0 = colbuf[cols.idx(m, n)];
          a += L0 * Pc(m, n);
          b += L0 * Ps(m, n);
        }
        val += m == 0 ? a : a * std::cos(m * phi) + b * std::sin(m * phi);
      }
      out(p, c) = val;
    }
  }
  return out;
}

}  // namespace spheremag
