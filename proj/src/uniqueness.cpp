#include "spheremag/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace spheremag {

Vec3 InducedModel::operator()(const UnitVector& xi) const {
  const double q = Q(xi);
  return q == 0.0 ? Vec3::Zero() : Vec3(q * v(xi));
}

std::vector<Vec3> InducedModel::samples(const QuadratureGrid& grid) const {
  std::vector<Vec3> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.node(i));
  return out;
}

UnidirectionalSpec make_unidirectional_spec(double a, double b, const UnitVector& zeta, double v3) {
  if (!(a > -1.0 && a < b && b < 1.0)) throw std::invalid_argument("unidirectional spec: need -1 < a < b < 1");
  UnidirectionalSpec s;
  s.a = a;
  s.b = b;
  s.zeta = zeta;
  s.v3 = v3;
  const double half = 0.5 * (b - a);
  const double norm = std::pow(half, 8);
  s.profile = [a, b, norm](double t) {
    if (t <= a || t >= b) return 0.0;
    const double p = (t - a) * (b - t);
    return p * p * p * p / norm;
  };
  return s;
}

UnidirectionalSpec default_unidirectional_spec() {
  return make_unidirectional_spec(-0.9, -0.1, UnitVector(0, 0, 1), 1.0);
}

VectorField unidirectional_field(const UnidirectionalSpec& spec) {
  if (!(spec.a > -1.0 && spec.a < spec.b && spec.b < 1.0))
    throw std::invalid_argument("unidirectional spec: need -1 < a < b < 1");
  if (!spec.profile) throw std::invalid_argument("unidirectional spec: missing profile");
  return [spec](const UnitVector& xi) -> Vec3 {
    const double t = xi.dot(spec.zeta);
    if (t < spec.a || t > spec.b || spec.v3 == 0.0) return Vec3::Zero();
    return spec.v3 * spec.profile(t) * xi.vec().cross(spec.zeta.vec());
  };
}

std::vector<Vec3> unidirectional_silent(const UnidirectionalSpec& spec, const QuadratureGrid& grid) {
  return sample(unidirectional_field(spec), grid);
}

QuadratureGrid unidirectional_grid(const UnidirectionalSpec& spec, int n_per_band) {
  if (std::abs(std::abs(spec.zeta.z()) - 1.0) < 1e-15) {
    const double s = spec.zeta.z();
    return build_banded_gauss_grid({s * spec.a, s * spec.b}, n_per_band, 2 * n_per_band);
  }
  return build_gauss_grid(3 * n_per_band, 2 * n_per_band);
}

std::vector<Vec3> make_silent_exterior(const ScalarCoeffs& S1, const ScalarCoeffs& S3, const QuadratureGrid& grid) {
  const HelmholtzScalars a = tilde_operator(1, S1), c = tilde_operator(3, S3);
  const int L = std::max(S1.band_limit(), S3.band_limit());
  const HelmholtzScalars h{a.F1.with_band_limit(L), a.F2.with_band_limit(L), c.F3.with_band_limit(L)};
  return synthesize(h, grid);
}

std::vector<Vec3> make_silent_interior(const ScalarCoeffs& S2, const ScalarCoeffs& S3, const QuadratureGrid& grid) {
  ScalarCoeffs s2 = S2;
  s2.data()[0] = 0.0;
  const HelmholtzScalars b = tilde_operator(2, s2), c = tilde_operator(3, S3);
  const int L = std::max(S2.band_limit(), S3.band_limit());
  const HelmholtzScalars h{b.F1.with_band_limit(L), b.F2.with_band_limit(L), c.F3.with_band_limit(L)};
  return synthesize(h, grid);
}

double silence_score(std::span<const Vec3> m, const QuadratureGrid& grid, double R_eval, int n_eval) {
  if (!(R_eval > 0.0) || std::abs(R_eval - 1.0) < 1e-12)
    throw std::invalid_argument("silence_score: evaluation radius must be positive and differ from 1");
  if (m.size() != grid.size()) throw std::invalid_argument("silence_score: sample count does not match grid");
  double norm2 = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) norm2 += grid.weight(i) * m[i].squaredNorm();
  if (norm2 == 0.0) return 0.0;
  const PointSet eval = fibonacci_points(n_eval);
  std::vector<Vec3> xs;
  xs.reserve(eval.size());
  for (const UnitVector& u : eval.centers()) xs.push_back(R_eval * u.vec());
  const std::vector<double> V = potential_direct(m, grid, xs);
  double worst = 0.0;
  for (double x : V) worst = std::max(worst, std::abs(x));
  return worst / std::sqrt(norm2);
}

std::array<double, 3> hardy_hodge_energy(std::span<const Vec3> m, const QuadratureGrid& grid, int L) {
  const VectorCoeffs c = vsht_forward(m, grid, L);
  std::array<double, 3> e{};
  for (int i = 1; i <= 3; ++i) e[i - 1] = std::pow(c.family(i).norm(), 2);
  return e;
}

AdmissibilityTensor admissibility_coeffs(const VectorField& v, int L, const QuadratureGrid& grid) {
  if (L < 0) throw std::invalid_argument("admissibility_coeffs: L must be >= 0");
  if (grid.exactness_degree() < 2 * L + 1)
    throw std::invalid_argument("admissibility_coeffs: grid exactness must be >= 2L+1");
  const std::size_t P = grid.size();
  const int S = (L + 1) * (L + 1);
  AdmissibilityTensor out;
  out.L = L;
  out.C = std::numeric_limits<double>::infinity();
  std::vector<Vec3> u(P);
  for (std::size_t i = 0; i < P; ++i) {
    const Vec3 vi = v(grid.node(i));
    const double r = grid.node(i).dot(vi);
    out.C = std::min(out.C, std::abs(r));
    out.v_max = std::max(out.v_max, vi.norm());
    u[i] = vi / r;
  }
  if (!(out.C >= 1e-6 * out.v_max))
    throw PreconditionViolation("admissibility violated: |xi.v(xi)| >= C fails (min |xi.v| = " +
                                std::to_string(out.C) + ")");

  // Y (weighted) and u . grad* Y at every node, then one product
  Eigen::MatrixXd Y(P, S), G(P, S);
  for (std::size_t i = 0; i < P; ++i) {
    const UnitVector& x = grid.node(i);
    const AssociatedLegendre tab(L, x.t());
    const SphericalFrame f = spherical_frame(x);
    const double ut = u[i].dot(f.e_theta), up = u[i].dot(f.e_phi);
    const double phi = x.longitude();
    for (int n = 0; n <= L; ++n) {
      Y(i, ScalarCoeffs::offset_nm(n, 0)) = grid.weight(i) * tab.lambda(n, 0);
      G(i, ScalarCoeffs::offset_nm(n, 0)) = ut * tab.dtheta(n, 0);
      for (int m = 1; m <= n; ++m) {
        const double c = std::cos(m * phi), s = std::sin(m * phi);
        const double lam = tab.lambda(n, m), A = tab.dtheta(n, m), B = tab.msin(n, m);
        Y(i, ScalarCoeffs::offset_nm(n, m)) = grid.weight(i) * lam * c;
        Y(i, ScalarCoeffs::offset_nm(n, -m)) = grid.weight(i) * lam * s;
        G(i, ScalarCoeffs::offset_nm(n, m)) = ut * A * c - up * B * s;
        G(i, ScalarCoeffs::offset_nm(n, -m)) = ut * A * s + up * B * c;
      }
    }
  }
  out.entries = G.transpose() * Y;
  return out;
}

ExistenceResult solve_existence_truncated(const VectorCoeffs& target, const VectorField& v, int L,
                                          const QuadratureGrid& grid) {
  if (L < 0) throw std::invalid_argument("solve_existence_truncated: L must be >= 0");
  const AdmissibilityTensor T = admissibility_coeffs(v, L, grid);
  const int S = (L + 1) * (L + 1);

  // right-hand side 2 <M~2, Y>; degree 0 uses the shared mean coefficient
  const VectorCoeffs tc = [&] {
    VectorCoeffs c(L);
    const int Lc = std::min(L, target.L);
    for (int i = 1; i <= 3; ++i)
      for (int n = 0; n <= Lc; ++n)
        for (int k = 1; k <= 2 * n + 1; ++k) c.family(i)(n, k) = target.family(i)(n, k);
    return c;
  }();
  Eigen::VectorXd rhs(S);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(S, S);
  rhs(0) = 2.0 * tc.c1(0, 1) / std::sqrt(mu(1, 0));
  A(0, 0) = 2.0;
  for (int n = 1; n <= L; ++n) {
    const double d = n + 0.5;
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int r = ScalarCoeffs::offset(n, k);
      rhs(r) = 2.0 * tc.c2(n, k) / std::sqrt(mu(2, n));
      A.row(r) = T.entries.row(r) / (n * d);
      A(r, r) += 1.0 / d;
    }
  }

  ExistenceResult out;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  out.sigma_max = sv(0);
  out.sigma_min = sv(sv.size() - 1);
  out.solved = out.sigma_min > 1e-14 * out.sigma_max;
  const Eigen::VectorXd gamma = svd.solve(rhs);
  out.relative_residual = rhs.norm() > 0.0 ? (A * gamma - rhs).norm() / rhs.norm() : (A * gamma).norm();

  out.M1 = ScalarCoeffs(L);
  out.M2 = ScalarCoeffs(L);
  for (int i = 0; i < S; ++i) out.M1.data()[i] = gamma(i);
  const Eigen::VectorXd m2 = T.entries * gamma;
  for (int n = 1; n <= L; ++n)
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int r = ScalarCoeffs::offset(n, k);
      out.M2.data()[r] = m2(r) / (n * (n + 1.0));
    }

  const ScalarCoeffs M1 = out.M1;
  out.model.v = v;
  out.model.Q = [M1, v](const UnitVector& xi) {
    const double m1 = sht_inverse(M1, std::span<const UnitVector>(&xi, 1))[0];
    return m1 / xi.dot(v(xi));
  };
  return out;
}

}  // namespace spheremag
