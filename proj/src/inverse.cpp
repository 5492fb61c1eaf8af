#include "spheremag/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/IterativeLinearSolvers>

namespace spheremag {

namespace {

constexpr std::size_t kChunk = 2048;

}  // namespace

PotentialSamples::PotentialSamples(double R_, QuadratureGrid grid_, std::vector<double> values_)
    : R(R_), grid(std::move(grid_)), values(std::move(values_)) {
  if (!(R > 0.0) || std::abs(R - 1.0) < 0.05)
    throw std::invalid_argument("PotentialSamples: radius must be positive with |R - 1| >= 0.05");
  if (values.size() != grid.size()) throw std::invalid_argument("PotentialSamples: value count does not match grid");
  weights.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) weights[i] = grid.weight(i) * R * R;
}

std::vector<Vec3> PotentialSamples::points() const {
  std::vector<Vec3> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = R * grid.node(i).vec();
  return out;
}

double PotentialSamples::norm_squared() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i] * values[i];
  return s;
}

SolveReport solve_spd(const Eigen::MatrixXd& M, const Eigen::VectorXd& g, double ridge) {
  const Eigen::Index N = M.rows();
  if (M.cols() != N || g.size() != N) throw std::invalid_argument("solve_spd: dimension mismatch");
  if (!(ridge >= 0.0)) throw std::invalid_argument("solve_spd: ridge must be >= 0");
  SolveReport rep;
  if (N == 0) return rep;
  const double scale = M.cwiseAbs().maxCoeff();
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1e-300))
    throw std::invalid_argument("solve_spd: matrix is not symmetric");

  const double shift = ridge * M.trace() / static_cast<double>(N);
  rep.ridge = shift;
  Eigen::MatrixXd A = M;
  A.diagonal().array() += shift;

  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    const Eigen::VectorXd d = llt.matrixLLT().diagonal().array().square();
    rep.min_pivot = d.minCoeff();
    rep.max_pivot = d.maxCoeff();
    ok = rep.min_pivot > 0.0 && std::isfinite(rep.max_pivot);
  }
  if (ok) {
    rep.method = "cholesky";
    rep.gamma = llt.solve(g);
  } else {
    rep.method = "cg";
    Eigen::ConjugateGradient<Eigen::MatrixXd, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-10);
    cg.setMaxIterations(static_cast<int>(10 * N));
    cg.compute(A);
    rep.gamma = cg.solve(g);
    rep.cg_iterations = static_cast<int>(cg.iterations());
    rep.converged = cg.info() == Eigen::Success;
  }
  const double gn = g.norm();
  rep.relative_residual = gn > 0.0 ? (M * rep.gamma - g).norm() / gn : (M * rep.gamma).norm();
  return rep;
}

void complement_quadrature(const CapRegion& region, int exactness, std::vector<UnitVector>& nodes,
                           std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  if (exactness < 0) throw std::invalid_argument("complement_quadrature: exactness must be >= 0");
  const double lo = std::max(region.threshold, -1.0);
  if (lo >= 1.0) return;
  const int n_polar = exactness / 2 + 1, n_lon = exactness + 1;
  std::vector<double> t, w;
  gauss_legendre(n_polar, lo, 1.0, t, w);
  const Eigen::Matrix3d rot = rotation_from_z(region.axis);
  const double dphi = 2.0 * std::numbers::pi / n_lon;
  nodes.reserve(static_cast<std::size_t>(n_polar) * n_lon);
  weights.reserve(nodes.capacity());
  for (int j = 0; j < n_polar; ++j) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t[j] * t[j]));
    for (int l = 0; l < n_lon; ++l) {
      const double phi = l * dphi;
      nodes.push_back(UnitVector::from_normalized(rot * Vec3(s * std::cos(phi), s * std::sin(phi), t[j])));
      weights.push_back(w[j] * dphi);
    }
  }
}

ReconstructionSystem::ReconstructionSystem(const ReconstructionProblem& p) : p_(p) {
  const std::size_t N = p.basis.size();
  if (N == 0) throw std::invalid_argument("reconstruction: empty basis");
  if (!(p.alpha >= 0.0)) throw std::invalid_argument("reconstruction: alpha must be >= 0");
  if (p.v_degree < 0) throw std::invalid_argument("reconstruction: v_degree must be >= 0");

  const std::vector<UnitVector>& dirs = p.data.grid.nodes();
  B_ = kernel_potentials(p.basis, p.v, p.v_degree, p.data.R, dirs);
  const Eigen::Map<const Eigen::VectorXd> W(p.data.weights.data(), p.data.weights.size());
  const Eigen::Map<const Eigen::VectorXd> V(p.data.values.data(), p.data.values.size());
  const Eigen::MatrixXd WB = W.asDiagonal() * B_;
  M_data_ = B_.transpose() * WB;
  M_data_ = 0.5 * (M_data_ + M_data_.transpose()).eval();
  g_ = WB.transpose() * V;
  data_norm2_ = p.data.norm_squared();

  // penalty: sum over complement nodes of w |v|^2 K_n K_m
  pen_exactness_ = abel_poisson_truncation(p.basis.h()) + 2 * p.v_degree;
  std::vector<double> w;
  complement_quadrature(p.region, pen_exactness_, pen_nodes_, w);
  pen_weights_.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) pen_weights_[i] = w[i] * p.v(pen_nodes_[i]).squaredNorm();

  M_pen_ = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd K;
  for (std::size_t start = 0; start < pen_nodes_.size(); start += kChunk) {
    const std::size_t len = std::min(kChunk, pen_nodes_.size() - start);
    K.resize(len, N);
    for (std::size_t i = 0; i < len; ++i) {
      const double sw = std::sqrt(pen_weights_[start + i]);
      const UnitVector& x = pen_nodes_[start + i];
      for (std::size_t n = 0; n < N; ++n) K(i, n) = sw * p.basis.kernel(n, x);
    }
    M_pen_.selfadjointView<Eigen::Lower>().rankUpdate(K.transpose());
  }
  M_pen_ = M_pen_.selfadjointView<Eigen::Lower>();
}

AssembledSystem ReconstructionSystem::assemble(double alpha) const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("reconstruction: alpha must be >= 0");
  return {M_data_ + alpha * M_pen_, g_};
}

FunctionalValue ReconstructionSystem::evaluate(std::span<const double> gamma, double alpha) const {
  const std::size_t N = p_.basis.size();
  if (gamma.size() != N) throw std::invalid_argument("evaluate_functional: coefficient count mismatch");
  const Eigen::Map<const Eigen::VectorXd> gv(gamma.data(), N);
  FunctionalValue out;
  const Eigen::VectorXd model = B_ * gv;
  for (std::size_t i = 0; i < p_.data.values.size(); ++i) {
    const double r = model(i) - p_.data.values[i];
    out.misfit += p_.data.weights[i] * r * r;
  }
  for (std::size_t i = 0; i < pen_nodes_.size(); ++i) {
    const double q = p_.basis.evaluate(gamma, pen_nodes_[i]);
    out.leakage += pen_weights_[i] * q * q;
  }
  out.functional = out.misfit + alpha * out.leakage;
  return out;
}

ReconstructionResult ReconstructionSystem::solve(double alpha, double ridge) const {
  const AssembledSystem sys = assemble(alpha);
  ReconstructionResult r;
  r.alpha = alpha;
  r.diagnostics = solve_spd(sys.M, sys.g, ridge);
  r.gamma.assign(r.diagnostics.gamma.data(), r.diagnostics.gamma.data() + r.diagnostics.gamma.size());
  const FunctionalValue f = evaluate(r.gamma, alpha);
  r.misfit = f.misfit;
  r.leakage = f.leakage;
  r.functional = f.functional;
  return r;
}

AssembledSystem assemble_system(const ReconstructionProblem& p) {
  return ReconstructionSystem(p).assemble(p.alpha);
}

ReconstructionResult reconstruct(const ReconstructionProblem& p) {
  return ReconstructionSystem(p).solve(p.alpha, p.ridge);
}

std::vector<ReconstructionResult> reconstruct_sweep(const ReconstructionProblem& p, std::span<const double> alphas) {
  std::vector<ReconstructionResult> out;
  if (alphas.empty()) return out;
  const ReconstructionSystem sys(p);
  for (double a : alphas) out.push_back(sys.solve(a, p.ridge));
  return out;
}

FunctionalValue evaluate_functional(const ReconstructionProblem& p, std::span<const double> gamma) {
  return ReconstructionSystem(p).evaluate(gamma, p.alpha);
}

}  // namespace spheremag
