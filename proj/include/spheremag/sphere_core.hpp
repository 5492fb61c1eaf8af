#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace spheremag {

using Vec3 = Eigen::Vector3d;

// Raised when an operation's documented precondition does not hold. Derives
// from invalid_argument so callers can treat both uniformly.
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point on the unit sphere. Construction normalises the input; a zero vector
/// is rejected.
class UnitVector {
 public:
  UnitVector() : v_(0.0, 0.0, 1.0) {}
  explicit UnitVector(const Vec3& v);
  UnitVector(double x, double y, double z) : UnitVector(Vec3(x, y, z)) {}

  // Accepts an already normalised vector (|v|=1 within 1e-12) without
  // rescaling, so grid nodes stay bit-identical to their formulas.
  static UnitVector from_normalized(const Vec3& v);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vec3& vec() const { return v_; }
  double dot(const UnitVector& o) const { return v_.dot(o.v_); }
  double dot(const Vec3& o) const { return v_.dot(o); }

  // Polar coordinate t = cos(colatitude) and longitude in (-pi, pi].
  double t() const { return v_.z(); }
  double longitude() const;

 private:
  Vec3 v_;
};

/// Local spherical frame (e_r, e_theta, e_phi) at a point. At the poles the
/// longitude is taken as atan2(y, x), which is 0 for an exact pole.
struct SphericalFrame {
  Vec3 e_r;
  Vec3 e_theta;
  Vec3 e_phi;
};
SphericalFrame spherical_frame(const UnitVector& xi);

/// Ring-structured product quadrature on the unit sphere.
///
/// Nodes are ordered ring-major: index = ring * n_lon + lon. Longitudes are
/// phi_l = 2*pi*l/n_lon. Polar weights sum to 2 and node weights are
/// polar_weight * 2*pi/n_lon, so all weights sum to 4*pi. The exactness
/// degree d guarantees exact integration of every spherical polynomial of
/// degree <= d.
class QuadratureGrid {
 public:
  QuadratureGrid(std::vector<double> ring_t, std::vector<double> ring_weight, int n_lon,
                 int exactness_degree);

  std::size_t size() const { return nodes_.size(); }
  int n_rings() const { return static_cast<int>(ring_t_.size()); }
  int n_lon() const { return n_lon_; }
  int exactness_degree() const { return exactness_; }

  const std::vector<UnitVector>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const UnitVector& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  const std::vector<double>& ring_t() const { return ring_t_; }
  const std::vector<double>& ring_weight() const { return ring_weight_; }
  double longitude(int l) const;

 private:
  std::vector<double> ring_t_;
  std::vector<double> ring_weight_;
  int n_lon_;
  int exactness_;
  std::vector<UnitVector> nodes_;
  std::vector<double> weights_;
};

/// Spherical cap region Gamma = { xi : xi . axis <= threshold }.
struct CapRegion {
  UnitVector axis;
  double threshold = 0.0;

  CapRegion() = default;
  CapRegion(const UnitVector& axis_, double threshold_);

  bool contains(const UnitVector& xi) const { return xi.dot(axis) <= threshold; }
  static CapRegion lower_hemisphere() { return CapRegion(UnitVector(0, 0, 1), 0.0); }
};

/// Distinct kernel centres on the unit sphere.
class PointSet {
 public:
  explicit PointSet(std::vector<UnitVector> centers);
  std::size_t size() const { return centers_.size(); }
  const std::vector<UnitVector>& centers() const { return centers_; }
  const UnitVector& operator[](std::size_t i) const { return centers_[i]; }
  double min_pairwise_angle() const;

 private:
  std::vector<UnitVector> centers_;
};

/// Gauss-Legendre nodes and weights on [a, b] (n >= 1), ascending.
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Gauss-Legendre in t x equispaced longitudes. Exactness
/// min(2*n_polar-1, n_lon-1).
QuadratureGrid build_gauss_grid(int n_polar, int n_lon);

/// Smallest plain Gauss grid with the requested exactness degree.
QuadratureGrid gauss_grid_for_degree(int degree);

/// Composite rule: an independent Gauss-Legendre rule with n_per_band nodes
/// on each t-interval between consecutive breakpoints of
/// {-1, breaks..., 1}. Regions bounded by a break never cut a cell, so
/// masking a cap whose threshold is a break is an exact half-range rule.
QuadratureGrid build_banded_gauss_grid(std::vector<double> breaks, int n_per_band, int n_lon);

/// Golden-angle spiral of N points; deterministic.
PointSet fibonacci_points(int N);

double integrate(std::span<const double> samples, const QuadratureGrid& grid);

/// Integral over the complement of the region (nodes with xi.axis > threshold).
double masked_integrate(std::span<const double> samples, const QuadratureGrid& grid,
                        const CapRegion& region);

/// Integral over the region itself (nodes with xi.axis <= threshold).
double region_integrate(std::span<const double> samples, const QuadratureGrid& grid,
                        const CapRegion& region);

double geodesic_distance(const UnitVector& a, const UnitVector& b);

/// Rotation taking the z axis to the given direction.
Eigen::Matrix3d rotation_from_z(const UnitVector& axis);

}  // namespace spheremag
