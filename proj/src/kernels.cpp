#include "lcn/kernels.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace lcn {

double WeaklySingularKernel::operator()(const SurfacePoint& x,
                                        const SurfacePoint& y) const {
  const double r = (x.x - y.x).norm();
  if (r == 0.0) throw DomainError(name() + ": kernel evaluated on the diagonal");
  const double m = mu();
  return m == 1.0 ? u(x, y) / r : u(x, y) / std::pow(r, 2.0 - m);
}

double LaplaceDoubleLayer::u(const SurfacePoint& x,
                             const SurfacePoint& y) const {
  const Vec3 d = x.x - y.x;
  return y.nu.dot(d) / (4.0 * M_PI * d.squaredNorm());
}

double OddTestKernel::u(const SurfacePoint& x, const SurfacePoint& y) const {
  const Vec3 d = y.x - x.x;
  return tangent_frame(x.nu).t1.dot(d) / d.norm();
}

double laplace_dl(const Vec3& x, const Vec3& y, const Vec3& nu_y) {
  const Vec3 d = x - y;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw DomainError("laplace_dl: x == y");
  return nu_y.dot(d) / (4.0 * M_PI * r2 * std::sqrt(r2));
}

Completion parse_completion(const std::string& name) {
  if (name == "ones") return Completion::ones;
  if (name == "none") return Completion::none;
  throw ConfigError("unknown kernel.completion '" + name + "'");
}

std::string to_string(Completion completion) {
  return completion == Completion::ones ? "ones" : "none";
}

KernelPair::KernelPair(std::shared_ptr<const WeaklySingularKernel> h,
                       Completion g, double c_value)
    : H(std::move(h)), G(g), c(c_value) {
  if (!H) throw ConfigError("kernel pair needs a singular kernel");
  if (c == 0.0 || !std::isfinite(c))
    throw ConfigError("equation.c must be finite and non-zero");
}

bool KernelPair::is_laplace_dl() const {
  return dynamic_cast<const LaplaceDoubleLayer*>(H.get()) != nullptr;
}

std::shared_ptr<const WeaklySingularKernel> make_kernel(
    const std::string& name) {
  if (name == "laplace_dl") return std::make_shared<LaplaceDoubleLayer>();
  if (name == "inverse_distance") return std::make_shared<InverseDistance>();
  if (name == "odd_test") return std::make_shared<OddTestKernel>();
  throw ConfigError("unknown kernel.type '" + name + "'");
}

namespace {

double polar_limit(const Surface& surface, const WeaklySingularKernel& kernel,
                   const SurfacePoint& x0, const TangentFrame& frame,
                   const Vec2& xi_hat) {
  const double d = surface.lyapunov_radius();
  const std::array<double, 3> rho{1e-2 * d, 5e-3 * d, 2.5e-3 * d};
  std::array<double, 3> val{};
  for (int k = 0; k < 3; ++k) {
    const SurfacePoint y =
        chart_point(surface, x0.x, frame, LocalCartesian{rho[k] * xi_hat});
    val[k] = kernel.u(x0, y);
  }
  // u(rho) = u0 + a rho + b rho^2 + ...; halve twice.
  const double d1 = std::abs(val[1] - val[0]);
  const double d2 = std::abs(val[2] - val[1]);
  // Round-off in x - y is amplified by 1 / rho^2 in kernels like the double
  // layer, so the smallest radius sets the noise floor.
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 1e-13 * (1.0 + std::abs(val[2])) +
                       16.0 * eps * (1.0 + x0.x.norm()) / (rho[2] * rho[2]);
  if (d2 > d1 + floor)
    throw KernelRegularityError(kernel.name() +
                                ": polar limit of u does not converge");
  const double r1 = 2.0 * val[1] - val[0];
  const double r2 = 2.0 * val[2] - val[1];
  return (4.0 * r2 - r1) / 3.0;
}

}  // namespace

PolarLimit u_polar_at_zero(const Surface& surface,
                           const WeaklySingularKernel& kernel, const Vec3& x0,
                           const Vec2& xi_hat) {
  if (kernel.mu() != 1.0)
    throw DomainError("u_polar_at_zero requires mu = 1");
  const SurfacePoint p = surface.point(x0);
  const TangentFrame frame = tangent_frame(surface, x0);
  const Vec2 dir = xi_hat.normalized();
  PolarLimit out;
  out.value = polar_limit(surface, kernel, p, frame, dir);
  out.opposite = polar_limit(surface, kernel, p, frame, -dir);
  out.evenness_residual = std::abs(out.value - out.opposite);
  return out;
}

}  // namespace lcn
