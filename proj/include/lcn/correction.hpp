#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "lcn/kernels.hpp"
#include "lcn/meshquad.hpp"
#include "lcn/point_grid.hpp"
#include "lcn/pou.hpp"

namespace lcn {

/// Monomials xi_1^i xi_2^j with i + j <= p, ordered by total degree and then
/// by decreasing i: 1, xi_1, xi_2, xi_1^2, xi_1 xi_2, xi_2^2, ...
class MonomialBasis {
 public:
  explicit MonomialBasis(int p);

  int degree() const { return p_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(exps_.size()); }
  const std::array<int, 2>& exponent(Eigen::Index k) const {
    return exps_[static_cast<std::size_t>(k)];
  }
  Eigen::Index index_of(int i, int j) const;

  /// Values of all monomials at xi / scale.
  Eigen::VectorXd operator()(const Vec2& xi, double scale = 1.0) const;

 private:
  int p_;
  std::vector<std::array<int, 2>> exps_;
};

inline Eigen::Index basis_size(int p) { return (p + 1) * (p + 2) / 2; }

struct MomentOptions {
  double accuracy = 1e-9;
  /// Use the closed-surface value -1/2 for the whole-surface Laplace
  /// double-layer moment.
  bool analytic_dl = true;
  /// Starting polar grid; doubled until the estimate meets `accuracy`.
  int angles = 64;
  int radial = 16;
  int max_refinements = 4;
  /// rho = rho_in t^k on the inner segment. The polar integrand is already
  /// smooth at rho = 0, and grading (k > 1) clusters nodes where u loses
  /// relative accuracy to cancellation in nu(y).(x - y).
  int radial_grading = 1;
  /// Element rule for the part of the whole-surface moment outside the cap.
  int outer_level = 2;
  int outer_q = 16;
  int outer_subdivisions = 4;
};

/// Integrals of H(x, y) eta_x(y) xi^beta(y) dA_y for every beta in `basis`,
/// together with the estimated absolute error.
struct MomentValues {
  Eigen::VectorXd values;
  double error_estimate = 0.0;
};

/// Polar integration over the support of eta in the tangent plane of x:
/// periodic trapezoid rule in angle, Gauss in rho split where eta leaves its
/// plateau, optionally graded on the inner segment. Throws AccuracyError.
MomentValues singular_moments(const Surface& surface,
                              const WeaklySingularKernel& kernel,
                              const SurfacePoint& x, const TangentFrame& frame,
                              const CutoffFunction& eta,
                              const MonomialBasis& basis,
                              const MomentOptions& options = {});

/// Single moment in the default frame at x.
double singular_moment(const Surface& surface,
                       const WeaklySingularKernel& kernel, const Vec3& x,
                       const CutoffFunction& eta, std::array<int, 2> beta,
                       const MomentOptions& options = {});

/// Integral of H(x, .) over the whole surface. The cap around x is split off
/// with a smooth bump and integrated in polar coordinates; the remainder uses
/// subdivided Gauss rules on `outer`.
MomentValues whole_surface_moment(const SurfaceMesh& outer,
                                  const WeaklySingularKernel& kernel,
                                  const SurfacePoint& x,
                                  const MomentOptions& options = {});

/// C-infinity step: 1 for s <= 0, 0 for s >= 1.
double smooth_bump(double s);

/// Degree-p polynomial in the tangent coordinates of a fixed frame at
/// `center`. Coefficients refer to the monomials of xi / scale.
struct LocalPolynomial {
  Vec3 center = Vec3::Zero();
  TangentFrame frame{};
  Eigen::VectorXd coeffs;
  int degree = 0;
  double scale = 1.0;

  double operator()(const Vec3& z) const;
};

/// Frame at x, scale and support data shared by the moment system pieces.
struct LocalStencil {
  SurfacePoint x;
  TangentFrame frame;
  double scale = 1.0;
  std::vector<PartitionOfUnity::Entry> support;  ///< J_x with zeta_hat
};

/// M = sum over J_x of zeta_hat_b(x) eta(x_b) phi_b phi_b^T, phi_b the scaled
/// monomials at x_b.
Eigen::MatrixXd moment_matrix(const LocalStencil& stencil,
                              const CutoffFunction& eta, const NodeSet& nodes,
                              const MonomialBasis& basis);

/// Delta = moments - sum over b with x_b != x of zeta_b(x) H(x, x_b)
/// eta(x_b) phi_b W_b. `moments` and the result use scaled monomials.
/// `candidates` lists every node with eta(x_b) > 0 (all nodes if empty).
Eigen::VectorXd moment_rhs(const LocalStencil& stencil,
                           const WeaklySingularKernel& kernel,
                           const PartitionOfUnity& pou,
                           const CutoffFunction& eta, const NodeSet& nodes,
                           const MonomialBasis& basis,
                           const Eigen::VectorXd& moments,
                           const std::vector<Eigen::Index>* candidates);

/// Solves M C = Delta. Throws MomentSystemError naming x when the smallest
/// eigenvalue of M is below 1e-10 trace(M) or the residual exceeds
/// 1e-10 |Delta|.
LocalPolynomial solve_local_polynomial(const Eigen::MatrixXd& M,
                                       const Eigen::VectorXd& delta,
                                       const LocalStencil& stencil, int p,
                                       double* min_eigenvalue = nullptr);

/// Everything computed for one evaluation point.
struct LocalCorrection {
  LocalStencil stencil;
  LocalPolynomial R;
  Eigen::VectorXd moments;  ///< scaled monomials
  Eigen::VectorXd delta;
  Eigen::MatrixXd M;
  double min_eigenvalue = 0.0;
  double moment_error = 0.0;
};

/// Owns the discretization (mesh, nodes, PoU, kernels, cutoff) and computes
/// local corrections and corrected weights at arbitrary surface points.
class LocalCorrector {
 public:
  LocalCorrector(SurfaceMesh mesh, NodeSet nodes, PartitionOfUnity pou,
                 KernelPair kernels, int p, MomentOptions options = {});

  int degree() const { return basis_.degree(); }
  const SurfaceMesh& mesh() const { return mesh_; }
  const Surface& surface() const { return mesh_.surface; }
  const NodeSet& nodes() const { return nodes_; }
  const PartitionOfUnity& pou() const { return pou_; }
  const KernelPair& kernels() const { return kernels_; }
  const CutoffFunction& cutoff() const { return eta_; }
  const MonomialBasis& basis() const { return basis_; }
  const MomentOptions& moment_options() const { return options_; }

  LocalCorrection correct(const Vec3& x) const;
  LocalCorrection correct(const Vec3& x, const TangentFrame& frame) const;

  /// H_b(x) = zeta_b(x) H(x, x_b) W_b + zeta_hat_b(x) R_x(x_b), with the
  /// first term 0 when x == x_b.
  double corrected_weight(const LocalCorrection& local, Eigen::Index b) const;

  /// All corrected weights H_b(x), b = 0..n-1.
  Eigen::VectorXd row(const LocalCorrection& local) const;
  Eigen::VectorXd row(const Vec3& x) const { return row(correct(x)); }

  /// Nodes with eta_x(x_b) > 0.
  std::vector<Eigen::Index> cutoff_candidates(const Vec3& x) const;

 private:
  Eigen::VectorXd moments_at(const SurfacePoint& x, const TangentFrame& frame,
                             double scale, double* error) const;

  SurfaceMesh mesh_;
  NodeSet nodes_;
  PartitionOfUnity pou_;
  KernelPair kernels_;
  CutoffFunction eta_;
  MonomialBasis basis_;
  MomentOptions options_;
  PointGrid node_grid_;
  std::shared_ptr<const SurfaceMesh> outer_;  // whole-surface moments only
};

}  // namespace lcn
