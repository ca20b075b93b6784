#include "lcn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcn {

namespace {

// C-infinity partition: 1 below 0, 0 above 1.
double cap_weight(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double l = std::exp(-1.0 / (1.0 - s));
  const double r = std::exp(-1.0 / s);
  return l / (l + r);
}

double chord_at(const Surface& surface, const Vec3& x,
                const TangentFrame& frame, const Vec2& dir, double rho) {
  return (chart_point(surface, x, frame, LocalCartesian{rho * dir}).x - x)
      .norm();
}

// Chord grows with rho and never falls below it, so [0, target] brackets.
double bisect_radius(const Surface& surface, const Vec3& x,
                     const TangentFrame& frame, const Vec2& dir,
                     double target) {
  double lo = 0.0, hi = target;
  while (hi - lo > 1e-15 * target) {
    const double mid = 0.5 * (lo + hi);
    if (chord_at(surface, x, frame, dir, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Sum over the polar cap of H(x, y) w(chord) g(y, xi) dA_y.
template <class Weight, class Integrand>
double cap_sum(const Surface& surface, const WeaklySingularKernel& H,
               const SurfacePoint& x, const TangentFrame& frame, double a,
               double b, const GaussRule& gauss, int panels, int radial_panels,
               Weight&& weight, Integrand&& g) {
  const Eigen::Index q = gauss.nodes.size();
  const double dtheta = 2.0 * M_PI / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    for (Eigen::Index i = 0; i < q; ++i) {
      const double theta = dtheta * (k + 0.5 * (gauss.nodes(i) + 1.0));
      const double wt = 0.5 * dtheta * gauss.weights(i);
      const Vec2 dir(std::cos(theta), std::sin(theta));
      const double ra = bisect_radius(surface, x.x, frame, dir, a);
      const double rb = bisect_radius(surface, x.x, frame, dir, b);
      double line = 0.0;
      for (int seg = 0; seg < 2; ++seg) {
        for (int m = 0; m < radial_panels; ++m) {
          for (Eigen::Index j = 0; j < q; ++j) {
            const double t =
                (m + 0.5 * (gauss.nodes(j) + 1.0)) / radial_panels;
            const double wtt = 0.5 * gauss.weights(j) / radial_panels;
            double rho, drho;
            if (seg == 0) {
              rho = ra * t;
              drho = ra * wtt;
            } else {
              rho = ra + (rb - ra) * t;
              drho = (rb - ra) * wtt;
            }
            const Vec2 xi = rho * dir;
            const SurfacePoint y =
                chart_point(surface, x.x, frame, LocalCartesian{xi});
            const double jac = 1.0 / std::abs(y.nu.dot(x.nu));
            line += H(x, y) * rho * jac * drho * weight((y.x - x.x).norm()) *
                    g(y, xi);
          }
        }
      }
      total += wt * line;
    }
  }
  return total;
}

}  // namespace

Oracle::Oracle(const Surface& surface, KernelPair kernels, OracleConfig config)
    : surface_(surface),
      kernels_(std::move(kernels)),
      config_(config),
      outer_(build_mesh(surface, config.outer_level)),
      gauss_(gauss_legendre(config.q)) {
  if (!(config_.cap_fraction > 0.0 && config_.cap_fraction <= 0.9))
    throw ConfigError("oracle.cap_fraction must lie in (0, 0.9]");
}

OracleValue Oracle::evaluate(const ScalarField& phi, const SurfacePoint& x,
                             const Rule& rule) const {
  const double b = config_.cap_fraction * surface_.lyapunov_radius();
  const double a = 0.5 * b;
  const auto weight = [a, b](double chord) {
    return cap_weight((chord - a) / (b - a));
  };
  const TangentFrame frame = tangent_frame(x.nu);
  OracleValue out;
  out.h_part = cap_sum(surface_, *kernels_.H, x, frame, a, b, gauss_,
                       rule.panels, rule.radial_panels, weight,
                       [&phi](const SurfacePoint& y, const Vec2&) {
                         return phi(y.x);
                       });

  // Far field and the completion term on subdivided elements.
  const Eigen::Index q = gauss_.nodes.size();
  const int sub = rule.subdivisions;
  for (const Element& e : outer_.elements) {
    const double du = (e.u1 - e.u0) / sub, dv = (e.v1 - e.v0) / sub;
    for (int sj = 0; sj < sub; ++sj)
      for (int si = 0; si < sub; ++si)
        for (Eigen::Index j = 0; j < q; ++j)
          for (Eigen::Index i = 0; i < q; ++i) {
            const double u = e.u0 + du * (si + 0.5 * (gauss_.nodes(i) + 1.0));
            const double v = e.v0 + dv * (sj + 0.5 * (gauss_.nodes(j) + 1.0));
            const double w = 0.25 * du * dv * gauss_.weights(i) *
                             gauss_.weights(j) *
                             surface_.chart_area_element(e.face, u, v);
            const Vec3 y = surface_.chart_point(e.face, u, v);
            const double fy = phi(y);
            out.g_part += w * kernels_.g(x.x, y) * fy;
            const double chord = (y - x.x).norm();
            if (chord > a)
              out.h_part += w * (1.0 - weight(chord)) *
                            (*kernels_.H)(x, surface_.point(y)) * fy;
          }
  }
  out.value = out.g_part + out.h_part;
  return out;
}

OracleValue Oracle::apply(const ScalarField& phi, const Vec3& x) const {
  const SurfacePoint p = surface_.point(x);
  // Sub-elements must resolve the transition of the cap partition.
  const double width = 0.5 * config_.cap_fraction * surface_.lyapunov_radius();
  const int sub = std::max(config_.outer_subdivisions,
                           static_cast<int>(std::ceil(2.0 * outer_.h / width)));
  const Rule base{config_.panels, config_.radial_panels, sub};
  const Rule fine{2 * base.panels, 2 * base.radial_panels,
                  2 * base.subdivisions};
  const OracleValue coarse = evaluate(phi, p, base);
  OracleValue out = evaluate(phi, p, fine);
  out.error_estimate = std::abs(out.value - coarse.value);
  if (out.error_estimate > config_.tol) {
    std::ostringstream msg;
    msg << "oracle tolerance " << config_.tol << " not reached (estimate "
        << out.error_estimate << ")";
    throw OracleError(msg.str());
  }
  return out;
}

double Oracle::moment(const Vec3& x, const TangentFrame& frame,
                      const CutoffFunction& eta,
                      std::array<int, 2> beta) const {
  if (eta.is_unit()) throw DomainError("oracle moment needs a compact cutoff");
  const SurfacePoint p = surface_.point(x);
  const auto mono = [beta](const SurfacePoint&, const Vec2& xi) {
    return std::pow(xi(0), beta[0]) * std::pow(xi(1), beta[1]);
  };
  const auto w = [&eta](double chord) { return eta(chord); };
  const double coarse =
      cap_sum(surface_, *kernels_.H, p, frame, eta.inner(), eta.outer(),
              gauss_, config_.panels, 4 * config_.radial_panels, w, mono);
  const double fine =
      cap_sum(surface_, *kernels_.H, p, frame, eta.inner(), eta.outer(),
              gauss_, 2 * config_.panels, 8 * config_.radial_panels, w, mono);
  if (std::abs(fine - coarse) > config_.tol)
    throw OracleError("oracle moment did not reach its tolerance");
  return fine;
}

OracleValue oracle_apply(const Surface& surface, const KernelPair& kernels,
                         const ScalarField& phi, const Vec3& x,
                         const OracleConfig& config) {
  return Oracle(surface, kernels, config).apply(phi, x);
}

}  // namespace lcn
