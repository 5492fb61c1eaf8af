#include "spheremag/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spheremag {

namespace {

template <class F>
ScalarCoeffs scale_by_degree(const ScalarCoeffs& c, F symbol) {
  ScalarCoeffs out(c.band_limit());
  for (int n = 0; n <= c.band_limit(); ++n) {
    const double s = symbol(n);
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int i = ScalarCoeffs::offset(n, k);
      out.data()[i] = s * c.data()[i];
    }
  }
  return out;
}

double mean_coeff(const ScalarCoeffs& c) { return c.data()[0]; }

int band_limit_of(const HelmholtzScalars& h) {
  return std::max({h.F1.band_limit(), h.F2.band_limit(), h.F3.band_limit()});
}

void check_zero_mean(const ScalarCoeffs& c, const char* msg) {
  if (mean_coeff(c) != 0.0) throw std::invalid_argument(msg);
}

HelmholtzScalars padded(const HelmholtzScalars& h) {
  check_zero_mean(h.F2, "Helmholtz scalar F2 must have zero mean");
  check_zero_mean(h.F3, "Helmholtz scalar F3 must have zero mean");
  const int L = band_limit_of(h);
  return {h.F1.with_band_limit(L), h.F2.with_band_limit(L), h.F3.with_band_limit(L)};
}

}  // namespace

double multiplier_symbol(Multiplier kind, int n) {
  switch (kind) {
    case Multiplier::D: return n + 0.5;
    case Multiplier::D_inv: return 1.0 / (n + 0.5);
    case Multiplier::D_plus_half: return n + 1.0;
    case Multiplier::D_minus_half: return n;
    case Multiplier::D_plus_half_inv: return 1.0 / (n + 1.0);
    case Multiplier::D_minus_half_inv: return n == 0 ? 0.0 : 1.0 / n;
    case Multiplier::neg_beltrami: return n * (n + 1.0);
  }
  throw std::invalid_argument("unknown multiplier");
}

ScalarCoeffs apply_multiplier(const ScalarCoeffs& c, Multiplier kind) {
  if (kind == Multiplier::D_minus_half_inv && mean_coeff(c) != 0.0)
    throw std::invalid_argument("(D - 1/2)^-1 needs an input with zero mean");
  return scale_by_degree(c, [kind](int n) { return multiplier_symbol(kind, n); });
}

HelmholtzScalars helmholtz_decompose(std::span<const Vec3> f, const QuadratureGrid& grid, int L) {
  if (grid.exactness_degree() < 2 * L + 2)
    throw std::invalid_argument("helmholtz_decompose: grid exactness must be >= 2L+2");
  if (f.size() != grid.size()) throw std::invalid_argument("helmholtz_decompose: sample count does not match grid");
  std::vector<double> radial(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) radial[i] = grid.node(i).dot(f[i]);
  const VectorProjections p = project_vector(f, grid, L);
  const auto inv_beltrami = [](int n) { return n == 0 ? 0.0 : 1.0 / (n * (n + 1.0)); };
  return {sht_forward(radial, grid, L), scale_by_degree(p.gradient, inv_beltrami),
          scale_by_degree(p.curl, inv_beltrami)};
}

HardyHodgeScalars hardy_hodge_from_helmholtz(const HelmholtzScalars& h) {
  const HelmholtzScalars p = padded(h);
  const int L = p.F1.band_limit();
  HardyHodgeScalars out{HardyHodgeVariant::II, ScalarCoeffs(L), ScalarCoeffs(L), p.F3};
  for (int n = 0; n <= L; ++n) {
    const double d = 2.0 * n + 1.0;
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int i = ScalarCoeffs::offset(n, k);
      const double F1 = p.F1.data()[i], F2 = p.F2.data()[i];
      out.S1.data()[i] = (F1 - n * F2) / d;
      out.S2.data()[i] = (F1 + (n + 1.0) * F2) / d;
    }
  }
  return out;
}

HardyHodgeScalars hh3_from_hh2(const HardyHodgeScalars& s) {
  if (s.variant != HardyHodgeVariant::II) throw std::invalid_argument("hh3_from_hh2: expects variant II scalars");
  return {HardyHodgeVariant::III, apply_multiplier(s.S1, Multiplier::D_plus_half),
          scale_by_degree(s.S2, [](int n) { return static_cast<double>(n); }),
          scale_by_degree(s.S3, [](int n) { return static_cast<double>(n); })};
}

HardyHodgeScalars hh3_scalars(const HelmholtzScalars& h) {
  const HelmholtzScalars p = padded(h);
  const int L = p.F1.band_limit();
  HardyHodgeScalars out{HardyHodgeVariant::III, ScalarCoeffs(L), ScalarCoeffs(L), ScalarCoeffs(L)};
  for (int n = 0; n <= L; ++n) {
    const double D = n + 0.5, Dinv = 1.0 / D;
    for (int k = 1; k <= 2 * n + 1; ++k) {
      const int i = ScalarCoeffs::offset(n, k);
      const double F1 = p.F1.data()[i], F2 = p.F2.data()[i], F3 = p.F3.data()[i];
      out.S1.data()[i] = 0.5 * (F1 + 0.5 * Dinv * F1 - D * F2 + 0.25 * Dinv * F2);
      out.S2.data()[i] = 0.5 * (F1 - 0.5 * Dinv * F1 + D * F2 - 0.25 * Dinv * F2);
      out.S3.data()[i] = D * F3 - 0.5 * F3;
    }
  }
  return out;
}

HelmholtzScalars helmholtz_from_hardy_hodge(const HardyHodgeScalars& s) {
  if (s.variant != HardyHodgeVariant::II)
    throw std::invalid_argument("helmholtz_from_hardy_hodge: expects variant II scalars");
  HelmholtzScalars a = tilde_operator(1, s.S1);
  const HelmholtzScalars b = tilde_operator(2, s.S2);
  const int L = std::max(s.S1.band_limit(), s.S2.band_limit());
  a.F1 = a.F1.with_band_limit(L) + b.F1.with_band_limit(L);
  a.F2 = a.F2.with_band_limit(L) + b.F2.with_band_limit(L);
  a.F3 = s.S3;
  a.F3.data()[0] = 0.0;
  return a;
}

HardyHodgeSpectral hardy_hodge_spectral(std::span<const Vec3> f, const QuadratureGrid& grid, int L) {
  HardyHodgeSpectral out{vsht_forward(f, grid, L), HardyHodgeScalars{}};
  out.scalars.variant = HardyHodgeVariant::II;
  out.scalars.S1 = scale_by_degree(out.coeffs.c1, [](int n) { return 1.0 / std::sqrt(mu(1, n)); });
  out.scalars.S2 = scale_by_degree(out.coeffs.c2, [](int n) { return n == 0 ? 0.0 : 1.0 / std::sqrt(mu(2, n)); });
  out.scalars.S3 = scale_by_degree(out.coeffs.c3, [](int n) { return n == 0 ? 0.0 : 1.0 / std::sqrt(mu(3, n)); });
  out.scalars.S2.data()[0] = out.scalars.S1.data()[0];
  return out;
}

HelmholtzScalars tilde_operator(int family, const ScalarCoeffs& S) {
  const int L = S.band_limit();
  const auto zero_mean = [](ScalarCoeffs c) {
    c.data()[0] = 0.0;
    return c;
  };
  switch (family) {
    case 1:
      return {apply_multiplier(S, Multiplier::D_plus_half), zero_mean(-1.0 * S), ScalarCoeffs(L)};
    case 2:
      return {apply_multiplier(S, Multiplier::D_minus_half), zero_mean(S), ScalarCoeffs(L)};
    case 3:
      return {ScalarCoeffs(L), ScalarCoeffs(L), zero_mean(S)};
    default:
      throw std::invalid_argument("tilde_operator: family must be 1, 2 or 3");
  }
}

HelmholtzScalars bar_operator(int family, const ScalarCoeffs& S) {
  const int L = S.band_limit();
  switch (family) {
    case 1: {
      ScalarCoeffs F2 = -1.0 * apply_multiplier(S, Multiplier::D_plus_half_inv);
      F2.data()[0] = 0.0;
      return {S, F2, ScalarCoeffs(L)};
    }
    case 2:
      return {S, apply_multiplier(S, Multiplier::D_minus_half_inv), ScalarCoeffs(L)};
    case 3:
      return {ScalarCoeffs(L), ScalarCoeffs(L), apply_multiplier(S, Multiplier::D_minus_half_inv)};
    default:
      throw std::invalid_argument("bar_operator: family must be 1, 2 or 3");
  }
}

std::vector<Vec3> synthesize(const HelmholtzScalars& h, const QuadratureGrid& grid) {
  return synthesize_helmholtz(h.F1, h.F2, h.F3, grid);
}

std::vector<Vec3> synthesize(const HelmholtzScalars& h, std::span<const UnitVector> points) {
  return synthesize_helmholtz(h.F1, h.F2, h.F3, points);
}

std::array<std::vector<Vec3>, 3> hardy_hodge_parts(const VectorCoeffs& c, const QuadratureGrid& grid) {
  std::array<std::vector<Vec3>, 3> parts;
  for (int i = 1; i <= 3; ++i) {
    VectorCoeffs only(c.L);
    only.family(i) = c.family(i);
    parts[i - 1] = vsht_inverse(only, grid);
  }
  return parts;
}

}  // namespace spheremag
