#include "lcn/geometry.hpp"

#include <unsupported/Eigen/AutoDiff>

#include <algorithm>
#include <sstream>

namespace lcn {

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::sphere:
      return "sphere";
    case SurfaceKind::ellipsoid:
      return "ellipsoid";
    case SurfaceKind::perturbed_sphere:
      return "perturbed_sphere";
  }
  return "unknown";
}

TangentFrame TangentFrame::rotated(double angle) const {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * t1 + s * t2, -s * t1 + c * t2, nu};
}

Surface Surface::unit_sphere(std::optional<double> d) {
  const double radius = d.value_or(0.9);
  if (!(radius > 0.0)) throw ConfigError("lyapunov radius must be positive");
  return Surface(SurfaceKind::sphere, Vec3::Ones(), 0.0, radius);
}

Surface Surface::ellipsoid(double a, double b, double c,
                           std::optional<double> d) {
  if (!(a > 0 && b > 0 && c > 0))
    throw ConfigError("ellipsoid semi-axes must be positive");
  const double radius = d.value_or(0.5 * std::min({a, b, c}));
  if (!(radius > 0.0)) throw ConfigError("lyapunov radius must be positive");
  return Surface(SurfaceKind::ellipsoid, Vec3(a, b, c), 0.0, radius);
}

Surface Surface::perturbed_sphere(double eps, std::optional<double> d) {
  if (!(std::abs(eps) <= 0.2))
    throw ConfigError("perturbation amplitude must satisfy |eps| <= 0.2");
  const double radius = d.value_or(0.4);
  if (!(radius > 0.0)) throw ConfigError("lyapunov radius must be positive");
  return Surface(SurfaceKind::perturbed_sphere, Vec3::Ones(), eps, radius);
}

double Surface::level(const Vec3& y) const {
  switch (kind_) {
    case SurfaceKind::sphere:
      return y.norm() - 1.0;
    case SurfaceKind::ellipsoid:
      return y.cwiseQuotient(axes_).norm() - 1.0;
    case SurfaceKind::perturbed_sphere: {
      const double r = y.norm();
      const Vec3 w = y / r;
      return r - (1.0 + eps_ * shape_s(w));
    }
  }
  return 0.0;
}

Vec3 Surface::level_gradient(const Vec3& y) const {
  switch (kind_) {
    case SurfaceKind::sphere:
      return y.normalized();
    case SurfaceKind::ellipsoid: {
      const Vec3 q = y.cwiseQuotient(axes_);
      return q.cwiseQuotient(axes_) / q.norm();
    }
    case SurfaceKind::perturbed_sphere: {
      const double r = y.norm();
      const Vec3 w = y / r;
      const Vec3 grad_s(w.y(), w.x(), 3.0 * w.z());
      const Vec3 tangential = grad_s - w * w.dot(grad_s);
      return w - eps_ * tangential / r;
    }
  }
  return Vec3::Zero();
}

Vec3 Surface::normal(const Vec3& x) const {
  return level_gradient(x).normalized();
}

const CubeFace& cube_face(int face) {
  static const std::array<CubeFace, 6> faces = {{
      {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)},
      {Vec3(-1, 0, 0), Vec3(0, 0, 1), Vec3(0, 1, 0)},
      {Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 0, 0)},
      {Vec3(0, -1, 0), Vec3(1, 0, 0), Vec3(0, 0, 1)},
      {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0)},
      {Vec3(0, 0, -1), Vec3(0, 1, 0), Vec3(1, 0, 0)},
  }};
  if (face < 0 || face >= 6) throw DomainError("cube face index out of range");
  return faces[static_cast<std::size_t>(face)];
}

Vec3 Surface::chart_point(int face, double u, double v) const {
  return chart<double>(face, u, v);
}

Eigen::Matrix<double, 3, 2> Surface::chart_jacobian(int face, double u,
                                                    double v) const {
  using AD = Eigen::AutoDiffScalar<Eigen::Vector2d>;
  const AD ua(u, 2, 0), va(v, 2, 1);
  const Eigen::Matrix<AD, 3, 1> y = chart<AD>(face, ua, va);
  Eigen::Matrix<double, 3, 2> jac;
  for (int i = 0; i < 3; ++i) jac.row(i) = y(i).derivatives().transpose();
  return jac;
}

double Surface::chart_area_element(int face, double u, double v) const {
  const auto jac = chart_jacobian(face, u, v);
  return jac.col(0).cross(jac.col(1)).norm();
}

TangentFrame tangent_frame(const Vec3& nu) {
  // Pair the normal with the coordinate axis it is least aligned with.
  Eigen::Index axis = 0;
  nu.cwiseAbs().minCoeff(&axis);
  const Vec3 e = Vec3::Unit(axis);
  const Vec3 t1 = e.cross(nu).normalized();
  const Vec3 t2 = nu.cross(t1);
  return {t1, t2, nu};
}

TangentFrame tangent_frame(const Surface& surface, const Vec3& x) {
  const double residual = std::abs(surface.level(x));
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "tangent_frame: point (" << x.transpose()
        << ") is not on the surface, residual " << residual;
    throw DomainError(msg.str());
  }
  return tangent_frame(surface.normal(x));
}

LocalCartesian local_cartesian(const Vec3& x0, const TangentFrame& frame,
                               const Vec3& y) {
  const Vec3 r = y - x0;
  return {Vec2(r.dot(frame.t1), r.dot(frame.t2))};
}

SurfacePoint chart_point(const Surface& surface, const Vec3& x0,
                         const TangentFrame& frame, const LocalCartesian& xi) {
  return chart_point(surface, x0, frame, xi, nullptr);
}

SurfacePoint chart_point(const Surface& surface, const Vec3& x0,
                         const TangentFrame& frame, const LocalCartesian& xi,
                         double* offset) {
  const double d = surface.lyapunov_radius();
  if (!(xi.xi.norm() < d)) {
    std::ostringstream msg;
    msg << "chart_point: |xi| = " << xi.xi.norm()
        << " is outside the Lyapunov patch (d = " << d << ")";
    throw PatchError(msg.str());
  }
  const Vec3 base = x0 + xi.xi(0) * frame.t1 + xi.xi(1) * frame.t2;
  double s = 0.0;
  double g = surface.level(base);
  constexpr int max_iter = 50;
  constexpr double tol = 1e-13;
  for (int it = 0; it < max_iter; ++it) {
    const Vec3 y = base + s * frame.nu;
    const double slope = surface.level_gradient(y).dot(frame.nu);
    if (!(std::abs(slope) > 1e-8)) break;
    double step = -g / slope;
    // Keep the iterate within the patch, then backtrack on |g|.
    if (std::abs(step) > d) step = std::copysign(d, step);
    double g_new = surface.level(base + (s + step) * frame.nu);
    for (int k = 0; k < 30 && std::abs(g_new) > std::abs(g) &&
                    std::abs(step) > tol;
         ++k) {
      step *= 0.5;
      g_new = surface.level(base + (s + step) * frame.nu);
    }
    s += step;
    g = g_new;
    if (std::abs(step) <= tol || g == 0.0) {
      if (!(std::abs(s) <= d) || !(std::abs(g) <= 1e-12)) break;
      const Vec3 y_final = base + s * frame.nu;
      if (offset) *offset = s;
      return {y_final, surface.normal(y_final)};
    }
  }
  std::ostringstream msg;
  msg << "chart_point: projection did not converge at xi = ("
      << xi.xi.transpose() << "), outside Lyapunov patch";
  throw PatchError(msg.str());
}

LocalPolar local_polar(const LocalCartesian& xi) {
  const double rho = xi.xi.norm();
  if (rho == 0.0) return {0.0, Vec2(1.0, 0.0)};
  return {rho, xi.xi / rho};
}

LocalCartesian from_polar(const LocalPolar& polar) {
  return {polar.rho * polar.xi_hat};
}

}  // namespace lcn
