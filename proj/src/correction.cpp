#include "lcn/correction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcn {

namespace {

// Scaled monomials in basis order, written into out[0 .. N_p).
void monomials(int p, const Vec2& xi, double scale, double* out) {
  double px[16], py[16];
  const double a = xi(0) / scale, b = xi(1) / scale;
  px[0] = py[0] = 1.0;
  for (int k = 1; k <= p; ++k) {
    px[k] = px[k - 1] * a;
    py[k] = py[k - 1] * b;
  }
  int idx = 0;
  for (int deg = 0; deg <= p; ++deg)
    for (int i = deg; i >= 0; --i) out[idx++] = px[i] * py[deg - i];
}

std::string describe(const Vec3& x) {
  std::ostringstream s;
  s.precision(17);
  s << "(" << x(0) << ", " << x(1) << ", " << x(2) << ")";
  return s.str();
}

}  // namespace

MonomialBasis::MonomialBasis(int p) : p_(p) {
  if (p < 0 || p > 15) throw ConfigError("correction degree must be in [0, 15]");
  for (int deg = 0; deg <= p; ++deg)
    for (int i = deg; i >= 0; --i) exps_.push_back({i, deg - i});
}

Eigen::Index MonomialBasis::index_of(int i, int j) const {
  for (std::size_t k = 0; k < exps_.size(); ++k)
    if (exps_[k][0] == i && exps_[k][1] == j) return static_cast<Eigen::Index>(k);
  throw DomainError("monomial degree exceeds the basis degree");
}

Eigen::VectorXd MonomialBasis::operator()(const Vec2& xi, double scale) const {
  Eigen::VectorXd out(size());
  monomials(p_, xi, scale, out.data());
  return out;
}

double smooth_bump(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double l = std::exp(-1.0 / (1.0 - s));
  const double r = std::exp(-1.0 / s);
  return l / (l + r);
}

// ---------------------------------------------------------------------------
// Polar cap integration

namespace {

struct Cap {
  const Surface& surface;
  const WeaklySingularKernel& kernel;
  const SurfacePoint& x;
  const TangentFrame& frame;
  double inner;  // chord where the weight leaves 1
  double outer;  // chord where it reaches 0
};

// rho along `dir` where |y(rho) - x| = target. Newton with the exact
// derivative of the chord along the projected ray.
double chord_root(const Cap& cap, const Vec2& dir, double target) {
  const Vec3 v = dir(0) * cap.frame.t1 + dir(1) * cap.frame.t2;
  double rho = target;
  for (int it = 0; it < 40; ++it) {
    double s = 0.0;
    const SurfacePoint y = chart_point(cap.surface, cap.x.x, cap.frame,
                                       LocalCartesian{rho * dir}, &s);
    const double chord = (y.x - cap.x.x).norm();
    const double ds = -y.nu.dot(v) / y.nu.dot(cap.frame.nu);
    const double slope = (rho + s * ds) / chord;
    const double step = (chord - target) / slope;
    if (std::abs(chord - target) <= 4e-16 * target) return rho;
    rho -= step;
    if (std::abs(step) <= 1e-14 * target) return rho;
  }
  throw PatchError("cutoff radius not reached inside the Lyapunov patch");
}

// Radial integral of H w(chord) rho J xi^beta along one direction.
template <class Weight>
void radial_line(const Cap& cap, const Vec2& dir, double rho_in,
                 double rho_out, const GaussRule& rule, int p, double scale,
                 int grading, Weight&& weight, Eigen::VectorXd& sum) {
  sum.setZero();
  double mono[136] = {};
  const Eigen::Index np = sum.size();
  for (int seg = 0; seg < 2; ++seg) {
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      const double t = 0.5 * (rule.nodes(i) + 1.0);
      const double w = 0.5 * rule.weights(i);
      double rho, drho;
      if (seg == 0) {
        const double tg = std::pow(t, grading - 1);
        rho = rho_in * tg * t;
        drho = grading * rho_in * tg * w;
      } else {
        rho = rho_in + (rho_out - rho_in) * t;
        drho = (rho_out - rho_in) * w;
      }
      const Vec2 xi = rho * dir;
      const SurfacePoint y =
          chart_point(cap.surface, cap.x.x, cap.frame, LocalCartesian{xi});
      const double chord = (y.x - cap.x.x).norm();
      const double jac = 1.0 / std::abs(y.nu.dot(cap.frame.nu));
      const double val =
          cap.kernel(cap.x, y) * rho * jac * drho * weight(chord);
      monomials(p, xi, scale, mono);
      for (Eigen::Index k = 0; k < np; ++k) sum(k) += val * mono[k];
    }
  }
}

template <class Weight>
MomentValues polar_cap(const Cap& cap, int p, double scale,
                       const MomentOptions& options, Weight&& weight) {
  const Eigen::Index np = basis_size(p);
  int angles = std::max(4, options.angles + options.angles % 2);
  int radial = std::max(6, options.radial);
  double estimate = 0.0;
  Eigen::VectorXd line(np), coarse_line(np);
  for (int level = 0; level <= options.max_refinements; ++level) {
    const GaussRule rule = gauss_legendre(radial);
    const GaussRule coarse = gauss_legendre(radial - 6);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(np);
    Eigen::VectorXd half = Eigen::VectorXd::Zero(np);
    Eigen::VectorXd half_coarse = Eigen::VectorXd::Zero(np);
    for (int k = 0; k < angles; ++k) {
      const double theta = 2.0 * M_PI * k / angles;
      const Vec2 dir(std::cos(theta), std::sin(theta));
      const double rho_in = chord_root(cap, dir, cap.inner);
      const double rho_out = chord_root(cap, dir, cap.outer);
      radial_line(cap, dir, rho_in, rho_out, rule, p, scale,
                  options.radial_grading, weight, line);
      full += line;
      if (k % 2 == 0) {
        half += line;
        radial_line(cap, dir, rho_in, rho_out, coarse, p, scale,
                    options.radial_grading, weight, coarse_line);
        half_coarse += coarse_line;
      }
    }
    full *= 2.0 * M_PI / angles;
    half *= 4.0 * M_PI / angles;
    half_coarse *= 4.0 * M_PI / angles;
    // Both differences bound the error of the coarser rule, so they
    // overestimate the error of `full`.
    const double angular = (full - half).cwiseAbs().maxCoeff();
    const double radial_part = (half - half_coarse).cwiseAbs().maxCoeff();
    estimate = angular + radial_part;
    if (estimate <= options.accuracy) return {full, estimate};
    if (angular > 0.5 * options.accuracy) angles *= 2;
    if (radial_part > 0.5 * options.accuracy) radial += 8;
  }
  throw AccuracyError("polar moment integration did not reach the requested "
                      "accuracy",
                      estimate);
}

}  // namespace

MomentValues singular_moments(const Surface& surface,
                              const WeaklySingularKernel& kernel,
                              const SurfacePoint& x, const TangentFrame& frame,
                              const CutoffFunction& eta,
                              const MonomialBasis& basis,
                              const MomentOptions& options) {
  if (eta.is_unit())
    throw DomainError(
        "singular_moments needs a compactly supported cutoff; use "
        "whole_surface_moment for eta = 1");
  const Cap cap{surface, kernel, x, frame, eta.inner(), eta.outer()};
  return polar_cap(cap, basis.degree(), 1.0, options,
                   [&eta](double chord) { return eta(chord); });
}

MomentValues whole_surface_moment(const SurfaceMesh& outer,
                                  const WeaklySingularKernel& kernel,
                                  const SurfacePoint& x,
                                  const MomentOptions& options) {
  const Surface& surface = outer.surface;
  const double a = 0.25 * surface.lyapunov_radius();
  const double b = 0.5 * surface.lyapunov_radius();
  const auto bump = [a, b](double chord) {
    return smooth_bump((chord - a) / (b - a));
  };
  const TangentFrame frame = tangent_frame(x.nu);
  const Cap cap{surface, kernel, x, frame, a, b};
  MomentValues cap_part = polar_cap(cap, 0, 1.0, options, bump);

  const ScalarField rest = [&](const Vec3& y) {
    const double chord = (y - x.x).norm();
    if (chord <= a) return 0.0;
    return kernel(x, surface.point(y)) * (1.0 - bump(chord));
  };
  // Sub-elements must resolve the bump transition of width b - a.
  const int sub = std::max(options.outer_subdivisions,
                           static_cast<int>(std::ceil(2.0 * outer.h / (b - a))));
  double fine = 0.0, coarse = 0.0;
  for (const Element& e : outer.elements) {
    fine += integrate_element(surface, e, rest, options.outer_q, sub);
    coarse += integrate_element(surface, e, rest, options.outer_q - 4, sub);
  }
  const double outer_estimate = std::abs(fine - coarse);
  const double estimate = cap_part.error_estimate + outer_estimate;
  if (estimate > options.accuracy)
    throw AccuracyError("whole-surface moment did not reach the requested "
                        "accuracy",
                        estimate);
  cap_part.values(0) += fine;
  cap_part.error_estimate = estimate;
  return cap_part;
}

double singular_moment(const Surface& surface,
                       const WeaklySingularKernel& kernel, const Vec3& x,
                       const CutoffFunction& eta, std::array<int, 2> beta,
                       const MomentOptions& options) {
  const SurfacePoint sp = surface.point(x);
  const TangentFrame frame = tangent_frame(surface, x);
  const int deg = beta[0] + beta[1];
  if (eta.is_unit()) {
    if (deg != 0) throw DomainError("eta = 1 supports only beta = 0");
    if (options.analytic_dl &&
        dynamic_cast<const LaplaceDoubleLayer*>(&kernel) != nullptr)
      return -0.5;
    const SurfaceMesh outer = build_mesh(surface, options.outer_level);
    return whole_surface_moment(outer, kernel, sp, options).values(0);
  }
  const MonomialBasis basis(deg);
  return singular_moments(surface, kernel, sp, frame, eta, basis, options)
      .values(basis.index_of(beta[0], beta[1]));
}

// ---------------------------------------------------------------------------
// Local moment system

double LocalPolynomial::operator()(const Vec3& z) const {
  double mono[136] = {};
  monomials(degree, local_cartesian(center, frame, z).xi, scale, mono);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) sum += coeffs(k) * mono[k];
  return sum;
}

Eigen::MatrixXd moment_matrix(const LocalStencil& stencil,
                              const CutoffFunction& eta, const NodeSet& nodes,
                              const MonomialBasis& basis) {
  const Eigen::Index np = basis.size();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(np, np);
  Eigen::VectorXd phi(np);
  for (const auto& e : stencil.support) {
    const Vec3 xb = nodes.points.col(e.index);
    const double w = e.zeta_hat * eta(stencil.x.x, xb);
    if (w == 0.0) continue;
    monomials(basis.degree(), local_cartesian(stencil.x.x, stencil.frame, xb).xi,
              stencil.scale, phi.data());
    M.selfadjointView<Eigen::Lower>().rankUpdate(phi, w);
  }
  return M.selfadjointView<Eigen::Lower>();
}

Eigen::VectorXd moment_rhs(const LocalStencil& stencil,
                           const WeaklySingularKernel& kernel,
                           const PartitionOfUnity& pou,
                           const CutoffFunction& eta, const NodeSet& nodes,
                           const MonomialBasis& basis,
                           const Eigen::VectorXd& moments,
                           const std::vector<Eigen::Index>* candidates) {
  Eigen::VectorXd delta = moments;
  Eigen::VectorXd phi(basis.size());
  const Vec3& x = stencil.x.x;
  const auto visit = [&](Eigen::Index b) {
    const Vec3 xb = nodes.points.col(b);
    if (xb == x) return;
    const double e = eta(x, xb);
    if (e == 0.0) return;
    const double z = pou.zeta(b, x);
    if (z == 0.0) return;
    monomials(basis.degree(), local_cartesian(x, stencil.frame, xb).xi,
              stencil.scale, phi.data());
    delta -= (z * kernel(stencil.x, nodes.point(b)) * e * nodes.weights(b)) *
             phi;
  };
  if (candidates) {
    for (Eigen::Index b : *candidates) visit(b);
  } else {
    for (Eigen::Index b = 0; b < nodes.size(); ++b) visit(b);
  }
  return delta;
}

LocalPolynomial solve_local_polynomial(const Eigen::MatrixXd& M,
                                       const Eigen::VectorXd& delta,
                                       const LocalStencil& stencil, int p,
                                       double* min_eigenvalue) {
  const double trace = M.trace();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const double lmin = eig.eigenvalues().minCoeff();
  if (min_eigenvalue) *min_eigenvalue = lmin;
  if (!(trace > 0.0) || lmin < 1e-10 * trace) {
    std::ostringstream msg;
    msg << "moment system not uniformly invertible at x = "
        << describe(stencil.x.x) << " (min eigenvalue " << lmin
        << ", trace " << trace << ", " << stencil.support.size()
        << " nodes in J_x)";
    throw MomentSystemError(msg.str());
  }
  LocalPolynomial R;
  R.center = stencil.x.x;
  R.frame = stencil.frame;
  R.degree = p;
  R.scale = stencil.scale;
  R.coeffs = eig.eigenvectors() *
             (eig.eigenvectors().transpose() * delta)
                 .cwiseQuotient(eig.eigenvalues());
  const double residual = (M * R.coeffs - delta).norm();
  if (residual > 1e-10 * delta.norm() && residual > 1e-300) {
    std::ostringstream msg;
    msg << "moment system residual " << residual << " too large at x = "
        << describe(stencil.x.x);
    throw MomentSystemError(msg.str());
  }
  return R;
}

// ---------------------------------------------------------------------------
// LocalCorrector

LocalCorrector::LocalCorrector(SurfaceMesh mesh, NodeSet nodes,
                               PartitionOfUnity pou, KernelPair kernels, int p,
                               MomentOptions options)
    : mesh_(std::move(mesh)),
      nodes_(std::move(nodes)),
      pou_(std::move(pou)),
      kernels_(std::move(kernels)),
      eta_(p == 0 ? CutoffFunction::unit()
                  : CutoffFunction::for_radius(
                        mesh_.surface.lyapunov_radius())),
      basis_(p),
      options_(options) {
  if (pou_.degree() != p)
    throw ConfigError("partition of unity was built for a different degree");
  if (!eta_.is_unit()) node_grid_ = PointGrid(nodes_.points, eta_.outer());
  const bool analytic = options_.analytic_dl && kernels_.is_laplace_dl();
  if (p == 0 && !analytic)
    outer_ = std::make_shared<const SurfaceMesh>(
        build_mesh(mesh_.surface, options_.outer_level));
}

std::vector<Eigen::Index> LocalCorrector::cutoff_candidates(
    const Vec3& x) const {
  if (eta_.is_unit()) {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(nodes_.size()));
    for (std::size_t b = 0; b < all.size(); ++b)
      all[b] = static_cast<Eigen::Index>(b);
    return all;
  }
  auto c = node_grid_.within(x, eta_.outer());
  std::sort(c.begin(), c.end());
  return c;
}

Eigen::VectorXd LocalCorrector::moments_at(const SurfacePoint& x,
                                           const TangentFrame& frame,
                                           double scale,
                                           double* error) const {
  if (eta_.is_unit()) {
    if (outer_ == nullptr) {
      *error = 0.0;
      return Eigen::VectorXd::Constant(1, -0.5);
    }
    const MomentValues m =
        whole_surface_moment(*outer_, *kernels_.H, x, options_);
    *error = m.error_estimate;
    return m.values;
  }
  MomentValues m = singular_moments(mesh_.surface, *kernels_.H, x, frame, eta_,
                                    basis_, options_);
  for (Eigen::Index k = 0; k < basis_.size(); ++k) {
    const auto& e = basis_.exponent(k);
    m.values(k) /= std::pow(scale, e[0] + e[1]);
  }
  *error = m.error_estimate;
  return m.values;
}

LocalCorrection LocalCorrector::correct(const Vec3& x) const {
  return correct(x, tangent_frame(mesh_.surface, x));
}

LocalCorrection LocalCorrector::correct(const Vec3& x,
                                        const TangentFrame& frame) const {
  LocalCorrection out;
  out.stencil.x = mesh_.surface.point(x);
  out.stencil.frame = frame;
  out.stencil.scale = pou_.max_support_radius();
  out.stencil.support = pou_.support(x);
  out.moments = moments_at(out.stencil.x, frame, out.stencil.scale,
                           &out.moment_error);
  out.M = moment_matrix(out.stencil, eta_, nodes_, basis_);
  if (eta_.is_unit()) {
    out.delta = moment_rhs(out.stencil, *kernels_.H, pou_, eta_, nodes_,
                           basis_, out.moments, nullptr);
  } else {
    const auto cand = cutoff_candidates(x);
    out.delta = moment_rhs(out.stencil, *kernels_.H, pou_, eta_, nodes_,
                           basis_, out.moments, &cand);
  }
  out.R = solve_local_polynomial(out.M, out.delta, out.stencil,
                                 basis_.degree(), &out.min_eigenvalue);
  return out;
}

double LocalCorrector::corrected_weight(const LocalCorrection& local,
                                        Eigen::Index b) const {
  const Vec3& x = local.stencil.x.x;
  const Vec3 xb = nodes_.points.col(b);
  const double zh = pou_.zeta_hat(b, x);
  double w = 0.0;
  if (xb != x && zh < 1.0)
    w += (1.0 - zh) * kernels_.H->operator()(local.stencil.x, nodes_.point(b)) *
         nodes_.weights(b);
  if (zh > 0.0) w += zh * local.R(xb);
  return w;
}

Eigen::VectorXd LocalCorrector::row(const LocalCorrection& local) const {
  const Eigen::Index n = nodes_.size();
  const SurfacePoint& x = local.stencil.x;
  const WeaklySingularKernel& H = *kernels_.H;
  Eigen::VectorXd w(n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const Vec3 xb = nodes_.points.col(b);
    w(b) = xb == x.x ? 0.0 : H(x, nodes_.point(b)) * nodes_.weights(b);
  }
  for (const auto& e : local.stencil.support)
    w(e.index) = corrected_weight(local, e.index);
  return w;
}

}  // namespace lcn
