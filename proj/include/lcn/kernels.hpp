#pragma once

#include <memory>
#include <string>

#include "lcn/geometry.hpp"

namespace lcn {

/// Weakly singular kernel H(x, y) = u(x, y) / |x - y|^(2 - mu), scalar.
class WeaklySingularKernel {
 public:
  virtual ~WeaklySingularKernel() = default;

  virtual std::string name() const = 0;
  /// Exponent mu in (0, 1].
  virtual double mu() const { return 1.0; }
  /// Bounded factor u, defined for x != y.
  virtual double u(const SurfacePoint& x, const SurfacePoint& y) const = 0;

  /// H(x, y); throws DomainError on the diagonal.
  double operator()(const SurfacePoint& x, const SurfacePoint& y) const;
};

/// H = nu(y).(x - y) / (4 pi |x - y|^3), mu = 1.
class LaplaceDoubleLayer final : public WeaklySingularKernel {
 public:
  std::string name() const override { return "laplace_dl"; }
  double u(const SurfacePoint& x, const SurfacePoint& y) const override;
};

/// H = 1 / |x - y| (u = 1).
class InverseDistance final : public WeaklySingularKernel {
 public:
  std::string name() const override { return "inverse_distance"; }
  double u(const SurfacePoint&, const SurfacePoint&) const override {
    return 1.0;
  }
};

/// u = t1(x).(y - x) / |y - x|: odd in the polar limit. Negative control only.
class OddTestKernel final : public WeaklySingularKernel {
 public:
  std::string name() const override { return "odd_test"; }
  double u(const SurfacePoint& x, const SurfacePoint& y) const override;
};

/// Laplace double-layer value; throws DomainError when x == y.
double laplace_dl(const Vec3& x, const Vec3& y, const Vec3& nu_y);

/// Continuous kernel G: the rank-one range completion or nothing.
enum class Completion { ones, none };

Completion parse_completion(const std::string& name);
std::string to_string(Completion completion);

inline double completion_G(Completion completion, const Vec3&, const Vec3&) {
  return completion == Completion::ones ? 1.0 : 0.0;
}

/// The equation c phi - G phi - H phi = f.
struct KernelPair {
  std::shared_ptr<const WeaklySingularKernel> H;
  Completion G = Completion::ones;
  double c = 1.0;

  KernelPair(std::shared_ptr<const WeaklySingularKernel> h, Completion g,
             double c_value);

  double g(const Vec3& x, const Vec3& y) const { return completion_G(G, x, y); }
  bool is_laplace_dl() const;
};

std::shared_ptr<const WeaklySingularKernel> make_kernel(const std::string& name);

/// Limit of u(x0, psi_x0(rho xi_hat)) as rho -> 0, with the evenness
/// residual |u(0, xi_hat) - u(0, -xi_hat)|.
struct PolarLimit {
  double value = 0.0;
  double opposite = 0.0;
  double evenness_residual = 0.0;
};

/// Richardson extrapolation over rho in {1e-2, 5e-3, 2.5e-3} d. Requires
/// mu = 1. Throws KernelRegularityError when successive differences grow.
PolarLimit u_polar_at_zero(const Surface& surface,
                           const WeaklySingularKernel& kernel, const Vec3& x0,
                           const Vec2& xi_hat);

}  // namespace lcn
