#include <doctest.h>

#include <cmath>
#include <random>

#include "lcn/errors.hpp"
#include "lcn/kernels.hpp"
#include "lcn/meshquad.hpp"

using namespace lcn;
using doctest::Approx;

TEST_SUITE("kernels") {

TEST_CASE("double layer on the unit sphere") {
  const Surface s = Surface::unit_sphere();
  const LaplaceDoubleLayer H;
  const SurfacePoint x = s.point(Vec3(0, 0, 1));
  const SurfacePoint y = s.point(Vec3(1, 0, 0));
  CHECK(H(x, y) == Approx(-1.0 / (8 * M_PI * std::sqrt(2.0))).epsilon(1e-14));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const SurfacePoint a = s.point(random_surface_point(s, rng));
    const SurfacePoint b = s.point(random_surface_point(s, rng));
    const double r = (a.x - b.x).norm();
    CHECK(H(a, b) == Approx(-1.0 / (8 * M_PI * r)).epsilon(1e-10));
    CHECK(H.u(a, b) == Approx(-1.0 / (8 * M_PI)).epsilon(1e-10));
  }
}

TEST_CASE("diagonal is rejected") {
  const Surface s = Surface::unit_sphere();
  const SurfacePoint x = s.point(Vec3(0, 1, 0));
  CHECK_THROWS_AS(LaplaceDoubleLayer()(x, x), DomainError);
  CHECK_THROWS_AS(InverseDistance()(x, x), DomainError);
  CHECK_THROWS_AS(laplace_dl(x.x, x.x, x.nu), DomainError);
}

TEST_CASE("polar limit on the sphere") {
  const Surface s = Surface::unit_sphere();
  const LaplaceDoubleLayer H;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = random_surface_point(s, rng);
    const double t = angle(rng);
    const PolarLimit l = u_polar_at_zero(s, H, x, Vec2(std::cos(t), std::sin(t)));
    CHECK(l.value == Approx(-1.0 / (8 * M_PI)).epsilon(1e-8));
    CHECK(l.evenness_residual <= 1e-10);
  }
}

TEST_CASE("polar limit on an ellipsoid is even") {
  const Surface s = Surface::ellipsoid(1.5, 1, 0.8);
  const LaplaceDoubleLayer H;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = random_surface_point(s, rng);
    const PolarLimit l = u_polar_at_zero(s, H, x, Vec2(0.6, 0.8));
    CHECK(l.evenness_residual <= 1e-6);
  }
}

TEST_CASE("odd control kernel is not even") {
  const Surface s = Surface::unit_sphere();
  const OddTestKernel K;
  const PolarLimit l = u_polar_at_zero(s, K, Vec3(0, 0, 1), Vec2(1, 0));
  CHECK(l.evenness_residual > 1.0);
}

TEST_CASE("completion kernels") {
  CHECK(completion_G(Completion::ones, Vec3(1, 0, 0), Vec3(0, 1, 0)) == 1.0);
  CHECK(completion_G(Completion::none, Vec3(1, 0, 0), Vec3(0, 1, 0)) == 0.0);
  CHECK(parse_completion("ones") == Completion::ones);
  CHECK(parse_completion("none") == Completion::none);
  CHECK_THROWS_AS(parse_completion("twos"), ConfigError);

  // G applied to the constant 1 is the surface area.
  const NodeSet nodes = quadrature_nodes(build_mesh(Surface::unit_sphere(), 3), 3);
  const double g1 = integrate(nodes, [](const Vec3&) {
    return completion_G(Completion::ones, Vec3(0, 0, 1), Vec3::Zero());
  });
  CHECK(g1 == Approx(4 * M_PI).epsilon(1e-7));
}

TEST_CASE("kernel pair validation") {
  CHECK_THROWS_AS(KernelPair(make_kernel("laplace_dl"), Completion::ones, 0.0),
                  ConfigError);
  CHECK_THROWS_AS(KernelPair(nullptr, Completion::ones, 1.0), ConfigError);
  CHECK_THROWS_AS(make_kernel("helmholtz"), ConfigError);
  const KernelPair k(make_kernel("laplace_dl"), Completion::none, 2.0);
  CHECK(k.is_laplace_dl());
  CHECK(k.g(Vec3(1, 0, 0), Vec3(0, 0, 1)) == 0.0);
}

}
