#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lcn/meshquad.hpp"
#include "lcn/point_grid.hpp"

namespace lcn {

/// Radial profile of zeta as a function of t = |x - x_a| / r_a.
enum class Ramp {
  quadratic,  ///< min(1, t^2)
  quintic,    ///< C^2 smoothstep 10t^3 - 15t^4 + 6t^5 (bounded by 2 t^2)
};

enum class PouKind {
  /// Nearest-neighbour pair with zeta_hat_a(x_b) = delta_ab (degree 0).
  nodal,
  /// Radial pair of radius kappa * h / q (degree >= 1).
  radial,
};

struct PouOptions {
  double theta = 0.99;        ///< margin of the nodal pair, in (0, 1)
  double kappa_scale = 1.0;   ///< radial radius multiplier, see radial_kappa
  Ramp ramp = Ramp::quadratic;
  bool audit = true;
};

/// C^2 quintic smoothstep on [0, 1], clamped outside.
double smoothstep5(double t);

/// Complementary nodal pair zeta_a / zeta_hat_a = 1 - zeta_a.
class PartitionOfUnity {
 public:
  PouKind kind() const { return kind_; }
  int degree() const { return degree_; }
  Ramp ramp() const { return ramp_; }
  Eigen::Index size() const { return centers_.cols(); }
  const Eigen::Matrix3Xd& centers() const { return centers_; }

  /// Radius r_a of the quadratic bound zeta_a(x) <= (|x - x_a| / r_a)^2.
  double radius(Eigen::Index a) const { return radius_(a); }
  /// zeta_hat_a vanishes outside the ball of this radius about x_a.
  double support_radius(Eigen::Index a) const { return support_(a); }
  double max_support_radius() const { return max_support_; }

  double zeta(Eigen::Index a, const Vec3& x) const;
  double zeta_hat(Eigen::Index a, const Vec3& x) const {
    return 1.0 - zeta(a, x);
  }

  /// J_x = { b : zeta_hat_b(x) > 0 }, ascending.
  std::vector<Eigen::Index> support_set(const Vec3& x) const;

  /// J_x together with zeta_hat_b(x).
  struct Entry {
    Eigen::Index index;
    double zeta_hat;
  };
  std::vector<Entry> support(const Vec3& x) const;

  /// Sum over all a of zeta_hat_a(x).
  double overlap(const Vec3& x) const;

 private:
  friend PartitionOfUnity build_pou(const SurfaceMesh&, const NodeSet&, int,
                                    const PouOptions&);

  double nodal_zeta(Eigen::Index a, const Vec3& x) const;

  PouKind kind_ = PouKind::radial;
  int degree_ = 0;
  Ramp ramp_ = Ramp::quadratic;
  Eigen::Matrix3Xd centers_;
  Eigen::VectorXd radius_;
  Eigen::VectorXd support_;
  double max_support_ = 0.0;
  // Nodal pair: offset of the outer ramp and competitor lists.
  Eigen::VectorXd offset_;
  std::vector<std::vector<Eigen::Index>> competitors_;
  PointGrid grid_;
};

/// r_a = radial_kappa(p, q, scale) * h = scale (p + 1) h / (2q): a fixed
/// number of node spacings per degree.
double radial_kappa(int p, int q, double kappa_scale);

/// Degree 0 builds the nodal pair, degree >= 1 the radial pair. The support
/// audit runs on every node plus element corners, edge midpoints and centres.
/// Throws ConstructionError naming the worst audit point.
PartitionOfUnity build_pou(const SurfaceMesh& mesh, const NodeSet& nodes,
                           int p, const PouOptions& options = {});

/// Points used by the support audit.
std::vector<Vec3> audit_points(const SurfaceMesh& mesh, const NodeSet& nodes);

/// Cutoff eta_x: 1 on chordal distance <= d/4, 0 beyond d/2, quintic ramp
/// in between. `unit()` is the identically-one cutoff of the degree-0 method.
class CutoffFunction {
 public:
  CutoffFunction() = default;
  CutoffFunction(double inner, double outer) : inner_(inner), outer_(outer) {}
  static CutoffFunction for_radius(double lyapunov_radius) {
    return {0.25 * lyapunov_radius, 0.5 * lyapunov_radius};
  }
  static CutoffFunction unit() {
    CutoffFunction c;
    c.unit_ = true;
    return c;
  }

  bool is_unit() const { return unit_; }
  double inner() const { return inner_; }
  double outer() const { return outer_; }

  double operator()(double chord) const;
  double operator()(const Vec3& x, const Vec3& y) const {
    return unit_ ? 1.0 : (*this)((y - x).norm());
  }

 private:
  double inner_ = 0.0;
  double outer_ = 0.0;
  bool unit_ = false;
};

}  // namespace lcn
