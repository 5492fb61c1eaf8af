#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spheremag/forward.hpp"

namespace spheremag {

/// Potential values on the sphere of radius R, sampled at R * (grid nodes).
/// The stored weights are the grid weights times R^2, so sums against them
/// are surface integrals over the sphere of radius R.
struct PotentialSamples {
  PotentialSamples(double R, QuadratureGrid grid, std::vector<double> values);

  double R;
  QuadratureGrid grid;
  std::vector<double> values;
  std::vector<double> weights;

  std::vector<Vec3> points() const;
  double norm_squared() const;
};

/// Data, inducing field, kernel basis, support region and penalty weight of
/// the penalised least-squares problem
///   || V[Q] - V ||^2_{R}  +  alpha * || Q v ||^2 over the complement of the region.
/// v_degree is the polynomial degree of the Cartesian components of v; the
/// kernel potentials are exact for such fields.
struct ReconstructionProblem {
  PotentialSamples data;
  VectorField v;
  int v_degree = 2;
  AbelPoissonBasis basis;
  CapRegion region;
  double alpha = 0.0;
  double ridge = 1e-12;
};

struct SolveReport {
  Eigen::VectorXd gamma;
  std::string method;  // "cholesky" or "cg"
  double ridge = 0.0;  // absolute shift added to the diagonal
  double min_pivot = 0.0, max_pivot = 0.0;
  int cg_iterations = 0;
  bool converged = true;
  double relative_residual = 0.0;  // ||M gamma - g|| / ||g|| for the unshifted M
};

/// Solves (M + ridge * (tr M / N) I) gamma = g by Cholesky, falling back to
/// conjugate gradients (tol 1e-10, at most 10 N iterations).
SolveReport solve_spd(const Eigen::MatrixXd& M, const Eigen::VectorXd& g, double ridge);

struct AssembledSystem {
  Eigen::MatrixXd M;
  Eigen::VectorXd g;
};

struct FunctionalValue {
  double functional = 0.0, misfit = 0.0, leakage = 0.0;
};

struct ReconstructionResult {
  double alpha = 0.0;
  std::vector<double> gamma;
  double misfit = 0.0, leakage = 0.0, functional = 0.0;
  SolveReport diagnostics;
};

/// Precomputed pieces of the normal equations that do not depend on alpha:
/// kernel potentials on the data grid, data Gram matrix, data correlation
/// vector and penalty Gram matrix.
class ReconstructionSystem {
 public:
  explicit ReconstructionSystem(const ReconstructionProblem& p);

  const Eigen::MatrixXd& data_gram() const { return M_data_; }
  const Eigen::MatrixXd& penalty_gram() const { return M_pen_; }
  const Eigen::VectorXd& correlation() const { return g_; }
  /// Kernel potentials V_n at the data points (rows) for each centre (columns).
  const Eigen::MatrixXd& potentials() const { return B_; }
  double data_norm_squared() const { return data_norm2_; }
  int penalty_exactness() const { return pen_exactness_; }

  AssembledSystem assemble(double alpha) const;
  ReconstructionResult solve(double alpha, double ridge) const;
  /// Misfit and leakage evaluated pointwise from Q = sum gamma_n K(. xi_n).
  FunctionalValue evaluate(std::span<const double> gamma, double alpha) const;

 private:
  const ReconstructionProblem& p_;
  Eigen::MatrixXd B_, M_data_, M_pen_;
  Eigen::VectorXd g_;
  double data_norm2_ = 0.0;
  int pen_exactness_ = 0;
  std::vector<UnitVector> pen_nodes_;
  std::vector<double> pen_weights_;  // quadrature weight times |v|^2
};

AssembledSystem assemble_system(const ReconstructionProblem& p);
ReconstructionResult reconstruct(const ReconstructionProblem& p);
/// Reconstructions for several penalty weights sharing one assembly.
std::vector<ReconstructionResult> reconstruct_sweep(const ReconstructionProblem& p, std::span<const double> alphas);
FunctionalValue evaluate_functional(const ReconstructionProblem& p, std::span<const double> gamma);

/// Quadrature nodes and weights covering the complement of a cap region:
/// a banded Gauss rule in the frame of the region axis with a break at the
/// threshold, so no cell straddles the boundary.
void complement_quadrature(const CapRegion& region, int exactness, std::vector<UnitVector>& nodes,
                           std::vector<double>& weights);

}  // namespace spheremag
