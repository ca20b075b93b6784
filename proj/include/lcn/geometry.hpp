#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "lcn/errors.hpp"

namespace lcn {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class SurfaceKind { sphere, ellipsoid, perturbed_sphere };

std::string to_string(SurfaceKind kind);

/// A point on the surface together with its outward unit normal.
struct SurfacePoint {
  Vec3 x;
  Vec3 nu;
};

/// Orthonormal right-handed frame {t1, t2, nu} attached to a surface point.
struct TangentFrame {
  Vec3 t1;
  Vec3 t2;
  Vec3 nu;

  /// Frame rotated by `angle` about nu (same normal, rotated tangents).
  TangentFrame rotated(double angle) const;
};

/// Tangent-plane coordinates xi = (xi_1, xi_2) relative to a base point.
struct LocalCartesian {
  Vec2 xi = Vec2::Zero();
};

/// Polar form of tangent-plane coordinates; xi_hat = (1, 0) when rho = 0.
struct LocalPolar {
  double rho = 0.0;
  Vec2 xi_hat = Vec2(1.0, 0.0);
};

/// Closed analytic star-shaped surface described twice: by an implicit
/// level function (for projection and normals) and by six cube-face charts
/// [-1,1]^2 -> surface (for meshing).
///
/// Faces use the equiangular cube-sphere map followed by the radial shape map
/// of the surface kind, so charts are smooth bijections onto their patches.
class Surface {
 public:
  static Surface unit_sphere(std::optional<double> lyapunov_radius = {});
  static Surface ellipsoid(double a, double b, double c,
                           std::optional<double> lyapunov_radius = {});
  /// r(w) = 1 + eps * s(w) on unit directions w, with
  /// s(w) = (3 w_z^2 - 1) / 2 + w_x w_y.
  static Surface perturbed_sphere(double eps,
                                  std::optional<double> lyapunov_radius = {});

  SurfaceKind kind() const { return kind_; }
  double lyapunov_radius() const { return d_; }
  const Vec3& semi_axes() const { return axes_; }
  double epsilon() const { return eps_; }
  Vec3 centroid() const { return Vec3::Zero(); }

  /// Implicit level function, zero on the surface; behaves like a signed
  /// distance near the surface (unit-scaled gradient).
  double level(const Vec3& y) const;
  Vec3 level_gradient(const Vec3& y) const;

  /// Outward unit normal at a point on (or very near) the surface.
  Vec3 normal(const Vec3& x) const;
  SurfacePoint point(const Vec3& x) const { return {x, normal(x)}; }

  /// Chart of cube face `face` (0..5) at parameters (u, v) in [-1,1]^2.
  template <class Scalar>
  Eigen::Matrix<Scalar, 3, 1> chart(int face, const Scalar& u,
                                    const Scalar& v) const;

  Vec3 chart_point(int face, double u, double v) const;
  /// Columns are d/du and d/dv of the chart.
  Eigen::Matrix<double, 3, 2> chart_jacobian(int face, double u,
                                             double v) const;
  /// Area element |d/du x d/dv|.
  double chart_area_element(int face, double u, double v) const;

 private:
  Surface(SurfaceKind kind, Vec3 axes, double eps, double d)
      : kind_(kind), axes_(std::move(axes)), eps_(eps), d_(d) {}

  template <class Scalar>
  static Scalar shape_s(const Eigen::Matrix<Scalar, 3, 1>& w) {
    return Scalar(0.5) * (Scalar(3) * w.z() * w.z() - Scalar(1)) +
           w.x() * w.y();
  }

  SurfaceKind kind_;
  Vec3 axes_;
  double eps_;
  double d_;
};

/// Basis of cube face `face`: outward axis n and in-face axes e1, e2 with
/// e1 x e2 = n.
struct CubeFace {
  Vec3 n, e1, e2;
};
const CubeFace& cube_face(int face);

template <class Scalar>
Eigen::Matrix<Scalar, 3, 1> Surface::chart(int face, const Scalar& u,
                                           const Scalar& v) const {
  using std::sqrt;
  using std::tan;
  using V3 = Eigen::Matrix<Scalar, 3, 1>;
  const CubeFace& f = cube_face(face);
  const double quarter_pi = 0.25 * M_PI;
  const Scalar a = tan(u * quarter_pi);
  const Scalar b = tan(v * quarter_pi);
  V3 w;
  for (int i = 0; i < 3; ++i) w(i) = Scalar(f.n(i)) + a * f.e1(i) + b * f.e2(i);
  const Scalar len = sqrt(w.squaredNorm());
  w /= len;
  switch (kind_) {
    case SurfaceKind::sphere:
      return w;
    case SurfaceKind::ellipsoid: {
      V3 y;
      for (int i = 0; i < 3; ++i) y(i) = w(i) * axes_(i);
      return y;
    }
    case SurfaceKind::perturbed_sphere:
      return w * (Scalar(1) + eps_ * shape_s(w));
  }
  return w;
}

/// Outward-oriented tangent frame at x. The tangents depend only on the
/// normal, so the frame is reproducible for a given point.
TangentFrame tangent_frame(const Surface& surface, const Vec3& x);
TangentFrame tangent_frame(const Vec3& nu);

/// xi_alpha = (y - x0) . t_alpha. Total; injective only inside the patch.
LocalCartesian local_cartesian(const Vec3& x0, const TangentFrame& frame,
                               const Vec3& y);

/// Inverse of local_cartesian on the Lyapunov patch: projects the
/// tangent-plane point x0 + xi_1 t1 + xi_2 t2 onto the surface parallel to nu.
/// Safeguarded Newton on the normal offset s, s0 = 0, at most 50 iterations,
/// |ds| <= 1e-13.
SurfacePoint chart_point(const Surface& surface, const Vec3& x0,
                         const TangentFrame& frame, const LocalCartesian& xi);

/// Same, also returning the offset s with y = x0 + xi.t + s nu.
SurfacePoint chart_point(const Surface& surface, const Vec3& x0,
                         const TangentFrame& frame, const LocalCartesian& xi,
                         double* offset);

LocalPolar local_polar(const LocalCartesian& xi);
LocalCartesian from_polar(const LocalPolar& polar);

}  // namespace lcn
