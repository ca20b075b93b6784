#include "lcn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcn {

Eigen::MatrixXd assemble_h_block(const LocalCorrector& corrector,
                                 std::vector<NodeDiagnostics>* diagnostics) {
  const NodeSet& nodes = corrector.nodes();
  const Eigen::Index n = nodes.size();
  Eigen::MatrixXd K(n, n);
  if (diagnostics) diagnostics->assign(static_cast<std::size_t>(n), {});
  for (Eigen::Index a = 0; a < n; ++a) {
    const LocalCorrection local = corrector.correct(nodes.points.col(a));
    K.row(a) = corrector.row(local).transpose();
    if (diagnostics) {
      NodeDiagnostics& d = (*diagnostics)[static_cast<std::size_t>(a)];
      d.delta0 = local.delta(0);
      d.min_eigenvalue = local.min_eigenvalue;
      d.moment_error = local.moment_error;
      d.support = local.stencil.support.size();
      for (const auto& e : local.stencil.support)
        d.max_abs_R = std::max(d.max_abs_R,
                               std::abs(local.R(nodes.points.col(e.index))));
    }
  }
  return K;
}

namespace {

// A -= [G(x_a, x_b) W_b], in place to keep one n x n copy alive.
void subtract_g_block(const LocalCorrector& corrector, Eigen::MatrixXd& A) {
  const NodeSet& nodes = corrector.nodes();
  const KernelPair& k = corrector.kernels();
  if (k.G == Completion::none) return;
  const Eigen::Index n = nodes.size();
  for (Eigen::Index b = 0; b < n; ++b)
    for (Eigen::Index a = 0; a < n; ++a)
      A(a, b) -= k.g(nodes.points.col(a), nodes.points.col(b)) *
                 nodes.weights(b);
}

Eigen::VectorXd sample(const NodeSet& nodes, const ScalarField& f) {
  Eigen::VectorXd v(nodes.size());
  for (Eigen::Index a = 0; a < nodes.size(); ++a) v(a) = f(nodes.points.col(a));
  return v;
}

NystromSystem finish(const LocalCorrector& corrector, Eigen::MatrixXd A,
                     const ScalarField& f) {
  NystromSystem sys;
  sys.c = corrector.kernels().c;
  sys.A = std::move(A);
  subtract_g_block(corrector, sys.A);
  sys.A.diagonal().array() += sys.c;
  sys.rhs = sample(corrector.nodes(), f);
  return sys;
}

}  // namespace

NystromSystem assemble(const LocalCorrector& corrector,
                       const Eigen::MatrixXd& h_block, const ScalarField& f) {
  return finish(corrector, -h_block, f);
}

NystromSystem assemble(const LocalCorrector& corrector, const ScalarField& f,
                       std::vector<NodeDiagnostics>* diagnostics) {
  Eigen::MatrixXd A = assemble_h_block(corrector, diagnostics);
  A *= -1.0;
  return finish(corrector, std::move(A), f);
}

NystromSystem p0_fast_path(const LocalCorrector& corrector,
                           const ScalarField& f, GammaMode mode) {
  if (corrector.degree() != 0 || corrector.pou().kind() != PouKind::nodal)
    throw ConfigError("the p = 0 fast path needs p = 0 and the nodal pair");
  const NodeSet& nodes = corrector.nodes();
  const KernelPair& k = corrector.kernels();
  const Eigen::Index n = nodes.size();
  std::shared_ptr<const SurfaceMesh> outer;
  if (mode == GammaMode::computed)
    outer = std::make_shared<const SurfaceMesh>(build_mesh(
        corrector.surface(), corrector.moment_options().outer_level));

  NystromSystem sys;
  sys.c = k.c;
  sys.A.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const SurfacePoint xa = nodes.point(a);
    double singular;
    if (mode == GammaMode::analytic) {
      if (!k.is_laplace_dl())
        throw ConfigError("analytic gamma needs the Laplace double layer");
      singular = -0.5;
    } else {
      singular = whole_surface_moment(*outer, *k.H, xa,
                                      corrector.moment_options())
                     .values(0);
    }
    double diag = k.c - singular;
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) continue;
      const double hw = (*k.H)(xa, nodes.point(b)) * nodes.weights(b);
      sys.A(a, b) = -hw;
      diag += hw;
    }
    sys.A(a, a) = diag;
  }
  subtract_g_block(corrector, sys.A);
  sys.rhs = sample(nodes, f);
  return sys;
}

NystromSolution::NystromSolution(std::shared_ptr<const LocalCorrector> corrector,
                                 ScalarField f, Eigen::VectorXd phi,
                                 double residual)
    : corrector_(std::move(corrector)),
      f_(std::move(f)),
      phi_(std::move(phi)),
      residual_(residual) {}

double NystromSolution::interpolate(const Vec3& x) const {
  const LocalCorrector& cor = *corrector_;
  const NodeSet& nodes = cor.nodes();
  const KernelPair& k = cor.kernels();
  double sum = f_(x);
  if (k.G != Completion::none)
    for (Eigen::Index b = 0; b < nodes.size(); ++b)
      sum += k.g(x, nodes.points.col(b)) * nodes.weights(b) * phi_(b);
  sum += cor.row(x).dot(phi_);
  return sum / k.c;
}

NystromSolution solve(std::shared_ptr<const LocalCorrector> corrector,
                      const NystromSystem& system, const ScalarField& f) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.A);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13)) {
    std::ostringstream msg;
    msg << "Nystrom matrix is numerically singular (rcond " << rcond
        << "); c may be close to a discrete eigenvalue";
    throw SolverError(msg.str());
  }
  Eigen::VectorXd phi = lu.solve(system.rhs);
  const double residual = (system.A * phi - system.rhs).norm();
  const double bound =
      1e-10 * (system.A.norm() * phi.norm() + system.rhs.norm());
  if (residual > bound) {
    std::ostringstream msg;
    msg << "Nystrom residual " << residual << " exceeds " << bound;
    throw SolverError(msg.str());
  }
  return NystromSolution(std::move(corrector), f, std::move(phi), residual);
}

double power_iteration(const Eigen::MatrixXd& K, Eigen::VectorXd v,
                       int max_iterations, double tol) {
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd w = K * v;
    const double next = v.dot(w);
    v = w.normalized();
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

double inverse_iteration(const Eigen::MatrixXd& K, double shift,
                         Eigen::VectorXd v, int max_iterations, double tol) {
  Eigen::MatrixXd S = K;
  S.diagonal().array() -= shift;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
  v.normalize();
  double lambda = shift;
  for (int it = 0; it < max_iterations; ++it) {
    v = lu.solve(v).normalized();
    const double next = v.dot(K * v);
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace lcn
