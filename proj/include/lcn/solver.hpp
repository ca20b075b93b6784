#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "lcn/correction.hpp"

namespace lcn {

/// Per-node diagnostics gathered while assembling the corrected H block.
struct NodeDiagnostics {
  double delta0 = 0.0;          ///< constant-moment residual Delta^0
  double min_eigenvalue = 0.0;  ///< of the (scaled) moment matrix
  double max_abs_R = 0.0;       ///< max over J_x of |R_x(x_b)|
  double moment_error = 0.0;    ///< estimated moment quadrature error
  std::size_t support = 0;      ///< |J_x|
};

/// K(a, b) = H_b(x_a).
Eigen::MatrixXd assemble_h_block(const LocalCorrector& corrector,
                                 std::vector<NodeDiagnostics>* diagnostics =
                                     nullptr);

/// Dense system A phi = f with A = c I - [G(x_a, x_b) W_b] - K.
struct NystromSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
  double c = 1.0;
};

NystromSystem assemble(const LocalCorrector& corrector, const ScalarField& f,
                       std::vector<NodeDiagnostics>* diagnostics = nullptr);

/// Same matrix from an existing H block.
NystromSystem assemble(const LocalCorrector& corrector,
                       const Eigen::MatrixXd& h_block, const ScalarField& f);

enum class GammaMode {
  analytic,  ///< gamma = c + 1/2 (closed surface, Laplace double layer)
  computed,  ///< gamma = c - whole-surface integral of H(x_a, .)
};

/// Singularity subtraction for p = 0:
/// gamma(x_a) phi_a - sum G W phi - sum_{b != a} H(x_a, x_b) W_b (phi_b - phi_a)
/// = f(x_a), gamma(x_a) = c - integral of H(x_a, y) dA_y.
NystromSystem p0_fast_path(const LocalCorrector& corrector,
                           const ScalarField& f,
                           GammaMode mode = GammaMode::analytic);

/// Nodal values plus everything needed for the continuous interpolant.
class NystromSolution {
 public:
  NystromSolution(std::shared_ptr<const LocalCorrector> corrector,
                  ScalarField f, Eigen::VectorXd phi, double residual);

  const Eigen::VectorXd& nodal() const { return phi_; }
  double residual() const { return residual_; }
  const LocalCorrector& corrector() const { return *corrector_; }

  /// phi_h(x) = (f(x) + sum G_b(x) phi_b + sum H_b(x) phi_b) / c.
  double interpolate(const Vec3& x) const;

 private:
  std::shared_ptr<const LocalCorrector> corrector_;
  ScalarField f_;
  Eigen::VectorXd phi_;
  double residual_;
};

/// Dense LU solve. Throws SolverError when A is numerically singular or the
/// residual exceeds 1e-10 (|A| |phi| + |f|).
NystromSolution solve(std::shared_ptr<const LocalCorrector> corrector,
                      const NystromSystem& system, const ScalarField& f);

/// Dominant eigenvalue by power iteration (Rayleigh quotient).
double power_iteration(const Eigen::MatrixXd& K, Eigen::VectorXd v,
                       int max_iterations = 500, double tol = 1e-14);

/// Eigenvalue nearest `shift` by inverse iteration (Rayleigh quotient).
double inverse_iteration(const Eigen::MatrixXd& K, double shift,
                         Eigen::VectorXd v, int max_iterations = 200,
                         double tol = 1e-14);

}  // namespace lcn
