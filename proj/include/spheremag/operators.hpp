#pragma once

#include <array>
#include <span>
#include <vector>

#include "spheremag/harmonics.hpp"

namespace spheremag {

/// Degree-diagonal multipliers acting on ScalarCoeffs.
///   D               n + 1/2
///   D_plus_half     n + 1
///   D_minus_half    n        (annihilates degree 0)
///   neg_beltrami    n(n + 1)
/// The *_inv variants apply the reciprocal symbol.
enum class Multiplier { D, D_inv, D_plus_half, D_minus_half, D_plus_half_inv, D_minus_half_inv, neg_beltrami };

/// Symbol of the multiplier at degree n. D_minus_half_inv returns 0 at n = 0.
double multiplier_symbol(Multiplier kind, int n);

/// Throws invalid_argument for D_minus_half_inv on input with nonzero mean.
ScalarCoeffs apply_multiplier(const ScalarCoeffs& c, Multiplier kind);

/// f = xi F1 + grad* F2 + L* F3 with F2, F3 of zero mean.
struct HelmholtzScalars {
  ScalarCoeffs F1, F2, F3;
};

enum class HardyHodgeVariant { II, III };

/// Variant II: f = o~1 S1 + o~2 S2 + o~3 S3, with S1 and S2 sharing their
/// degree-0 coefficient and S3 of zero mean.
/// Variant III: f = o-bar1 S1 + o-bar2 S2 + o-bar3 S3, with S2, S3 of zero mean.
struct HardyHodgeScalars {
  HardyHodgeVariant variant = HardyHodgeVariant::II;
  ScalarCoeffs S1, S2, S3;
};

HelmholtzScalars helmholtz_decompose(std::span<const Vec3> f, const QuadratureGrid& grid, int L);

HardyHodgeScalars hardy_hodge_from_helmholtz(const HelmholtzScalars& h);
HardyHodgeScalars hh3_scalars(const HelmholtzScalars& h);
/// Variant II -> III through F-bar1 = (D+1/2)F~1, F-bar2 = (D-1/2)F~2, F-bar3 = (D-1/2)F~3.
HardyHodgeScalars hh3_from_hh2(const HardyHodgeScalars& s);
/// Variant II -> Helmholtz.
HelmholtzScalars helmholtz_from_hardy_hodge(const HardyHodgeScalars& s);

struct HardyHodgeSpectral {
  VectorCoeffs coeffs;
  HardyHodgeScalars scalars;  // variant II
};
HardyHodgeSpectral hardy_hodge_spectral(std::span<const Vec3> f, const QuadratureGrid& grid, int L);

/// Helmholtz scalars of o~(i)[S] and o-bar(i)[S]. For o-bar2 and o-bar3 the
/// input must have zero mean.
HelmholtzScalars tilde_operator(int family, const ScalarCoeffs& S);
HelmholtzScalars bar_operator(int family, const ScalarCoeffs& S);

std::vector<Vec3> synthesize(const HelmholtzScalars& h, const QuadratureGrid& grid);
std::vector<Vec3> synthesize(const HelmholtzScalars& h, std::span<const UnitVector> points);

/// The three Hardy-Hodge parts f~(1), f~(2), f~(3) sampled on a grid.
std::array<std::vector<Vec3>, 3> hardy_hodge_parts(const VectorCoeffs& c, const QuadratureGrid& grid);

}  // namespace spheremag
