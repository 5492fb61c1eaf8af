#include "spheremag/sphere_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spheremag {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

UnitVector::UnitVector(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("UnitVector: zero or non-finite vector");
  v_ = v / n;
}

UnitVector UnitVector::from_normalized(const Vec3& v) {
  if (std::abs(v.squaredNorm() - 1.0) > 1e-12) return UnitVector(v);
  UnitVector u;
  u.v_ = v;
  return u;
}

double UnitVector::longitude() const { return std::atan2(v_.y(), v_.x()); }

SphericalFrame spherical_frame(const UnitVector& xi) {
  const double t = xi.t();
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  const double phi = xi.longitude();
  const double c = std::cos(phi), sn = std::sin(phi);
  return {xi.vec(), Vec3(t * c, t * sn, -s), Vec3(-sn, c, 0.0)};
}

QuadratureGrid::QuadratureGrid(std::vector<double> ring_t, std::vector<double> ring_weight,
                               int n_lon, int exactness_degree)
    : ring_t_(std::move(ring_t)),
      ring_weight_(std::move(ring_weight)),
      n_lon_(n_lon),
      exactness_(exactness_degree) {
  require(!ring_t_.empty() && ring_t_.size() == ring_weight_.size(),
          "QuadratureGrid: ring arrays empty or mismatched");
  require(n_lon_ >= 1, "QuadratureGrid: n_lon must be >= 1");
  const double dphi = 2.0 * kPi / n_lon_;
  nodes_.reserve(ring_t_.size() * n_lon_);
  weights_.reserve(ring_t_.size() * n_lon_);
  for (std::size_t j = 0; j < ring_t_.size(); ++j) {
    const double t = ring_t_[j];
    require(t > -1.0 && t < 1.0 && ring_weight_[j] > 0.0, "QuadratureGrid: invalid ring");
    const double s = std::sqrt(1.0 - t * t);
    for (int l = 0; l < n_lon_; ++l) {
      const double phi = longitude(l);
      Vec3 p(s * std::cos(phi), s * std::sin(phi), t);
      nodes_.push_back(UnitVector::from_normalized(p / p.norm()));
      weights_.push_back(ring_weight_[j] * dphi);
    }
  }
}

double QuadratureGrid::longitude(int l) const { return 2.0 * kPi * l / n_lon_; }

CapRegion::CapRegion(const UnitVector& axis_, double threshold_) : axis(axis_), threshold(threshold_) {
  require(threshold >= -1.0 && threshold <= 1.0, "CapRegion: threshold must lie in [-1, 1]");
}

PointSet::PointSet(std::vector<UnitVector> centers) : centers_(std::move(centers)) {
  require(!centers_.empty(), "PointSet: empty");
}

double PointSet::min_pairwise_angle() const {
  double best = kPi;
  for (std::size_t i = 0; i < centers_.size(); ++i)
    for (std::size_t j = i + 1; j < centers_.size(); ++j)
      best = std::min(best, geodesic_distance(centers_[i], centers_[j]));
  return best;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  require(n >= 1, "gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  // P_n'(x) from (P_n, P_{n-1}) at x
  auto derivative = [n](double x, double& pn) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    pn = p1;
    return n * (x * p1 - p0) / (x * x - 1.0);
  };
  // Newton on the larger half of the roots; the rest follow by symmetry.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pn = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double d = derivative(x, pn);
      const double step = pn / d;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double dp = derivative(x, pn);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = mid + half * x;
    nodes[i] = mid - half * x;
    weights[n - 1 - i] = half * w;
    weights[i] = half * w;
  }
  if (n % 2 == 1) nodes[n / 2] = mid;
}

QuadratureGrid build_gauss_grid(int n_polar, int n_lon) {
  require(n_polar >= 1 && n_lon >= 1, "build_gauss_grid: sizes must be >= 1");
  std::vector<double> t, w;
  gauss_legendre(n_polar, -1.0, 1.0, t, w);
  return QuadratureGrid(std::move(t), std::move(w), n_lon, std::min(2 * n_polar - 1, n_lon - 1));
}

QuadratureGrid gauss_grid_for_degree(int degree) {
  require(degree >= 0, "gauss_grid_for_degree: degree must be >= 0");
  return build_gauss_grid(degree / 2 + 1, degree + 1);
}

QuadratureGrid build_banded_gauss_grid(std::vector<double> breaks, int n_per_band, int n_lon) {
  require(n_per_band >= 1 && n_lon >= 1, "build_banded_gauss_grid: sizes must be >= 1");
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> edges{-1.0};
  for (double b : breaks) {
    require(b > -1.0 && b < 1.0, "build_banded_gauss_grid: breaks must lie in (-1, 1)");
    if (b > edges.back()) edges.push_back(b);
  }
  edges.push_back(1.0);
  std::vector<double> t, w, bt, bw;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    gauss_legendre(n_per_band, edges[i], edges[i + 1], bt, bw);
    t.insert(t.end(), bt.begin(), bt.end());
    w.insert(w.end(), bw.begin(), bw.end());
  }
  return QuadratureGrid(std::move(t), std::move(w), n_lon, std::min(2 * n_per_band - 1, n_lon - 1));
}

PointSet fibonacci_points(int N) {
  require(N >= 1, "fibonacci_points: N must be >= 1");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<UnitVector> pts;
  pts.reserve(N);
  for (int i = 0; i < N; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / N;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return PointSet(std::move(pts));
}

double integrate(std::span<const double> samples, const QuadratureGrid& grid) {
  require(samples.size() == grid.size(), "integrate: sample count does not match grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) sum += grid.weight(i) * samples[i];
  return sum;
}

double masked_integrate(std::span<const double> samples, const QuadratureGrid& grid,
                        const CapRegion& region) {
  require(samples.size() == grid.size(), "masked_integrate: sample count does not match grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!region.contains(grid.node(i))) sum += grid.weight(i) * samples[i];
  return sum;
}

double region_integrate(std::span<const double> samples, const QuadratureGrid& grid,
                        const CapRegion& region) {
  require(samples.size() == grid.size(), "region_integrate: sample count does not match grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (region.contains(grid.node(i))) sum += grid.weight(i) * samples[i];
  return sum;
}

double geodesic_distance(const UnitVector& a, const UnitVector& b) {
  // atan2 form stays accurate for nearly coincident points
  return std::atan2(a.vec().cross(b.vec()).norm(), a.dot(b));
}

Eigen::Matrix3d rotation_from_z(const UnitVector& axis) {
  const Vec3 z(0, 0, 1);
  const Vec3 a = axis.vec();
  const Vec3 k = z.cross(a);
  const double s = k.norm(), c = z.dot(a);
  if (s < 1e-15) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    if (c < 0) r.diagonal() << 1, -1, -1;
    return r;
  }
  const Vec3 u = k / s;
  Eigen::Matrix3d ux;
  ux << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Eigen::Matrix3d::Identity() + s * ux + (1 - c) * ux * ux;
}

}  // namespace spheremag
