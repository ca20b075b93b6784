#include <doctest.h>

#include <random>

#include "lcn/geometry.hpp"
#include "lcn/meshquad.hpp"

using namespace lcn;
using doctest::Approx;

TEST_SUITE("geometry") {

TEST_CASE("sphere normal at the pole") {
  const Surface s = Surface::unit_sphere();
  const TangentFrame f = tangent_frame(s, Vec3(0, 0, 1));
  CHECK((f.nu - Vec3(0, 0, 1)).norm() < 1e-15);
}

TEST_CASE("ellipsoid normal on an axis") {
  const Surface s = Surface::ellipsoid(2, 1, 1);
  const TangentFrame f = tangent_frame(s, Vec3(2, 0, 0));
  CHECK((f.nu - Vec3(1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("frames are orthonormal, right-handed and outward") {
  std::mt19937_64 rng(7);
  for (const Surface& s : {Surface::unit_sphere(), Surface::ellipsoid(1.5, 1, 0.8),
                           Surface::perturbed_sphere(0.1)}) {
    for (int i = 0; i < 200; ++i) {
      const Vec3 x = random_surface_point(s, rng);
      const TangentFrame f = tangent_frame(s, x);
      CHECK(std::abs(f.t1.dot(f.t1) - 1) < 1e-12);
      CHECK(std::abs(f.t2.dot(f.t2) - 1) < 1e-12);
      CHECK(std::abs(f.t1.dot(f.t2)) < 1e-12);
      CHECK((f.t1.cross(f.t2) - f.nu).norm() < 1e-12);
      CHECK(f.nu.dot(x) > 0);
    }
  }
}

TEST_CASE("off-surface point is rejected") {
  CHECK_THROWS_AS(tangent_frame(Surface::unit_sphere(), Vec3(0, 0, 1.1)),
                  DomainError);
}

TEST_CASE("local cartesian coordinates") {
  const TangentFrame f{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  const Vec3 x0(0, 0, 1);
  CHECK(local_cartesian(x0, f, x0).xi.norm() == 0.0);
  const Vec2 xi = local_cartesian(x0, f, Vec3(1, 0, 0)).xi;
  CHECK(xi(0) == 1.0);
  CHECK(xi(1) == 0.0);
  // The antipode projects onto the base point: not injective beyond the patch.
  CHECK(local_cartesian(x0, f, Vec3(0, 0, -1)).xi.norm() == 0.0);
}

TEST_CASE("chart point projection") {
  const Surface s = Surface::unit_sphere();
  const TangentFrame f{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  const Vec3 x0(0, 0, 1);
  CHECK((chart_point(s, x0, f, LocalCartesian{}).x - x0).norm() < 1e-15);

  double offset = 0;
  const SurfacePoint y = chart_point(s, x0, f, LocalCartesian{Vec2(0.6, 0)}, &offset);
  CHECK((y.x - Vec3(0.6, 0, 0.8)).norm() < 1e-12);
  CHECK(offset == Approx(-0.2).epsilon(1e-12));
  CHECK(std::abs(s.level(y.x)) < 1e-12);
}

TEST_CASE("chart point on the ellipsoid (2, 1, 1)") {
  const Surface s = Surface::ellipsoid(2, 1, 1);
  const Vec3 x0(2, 0, 0);
  const TangentFrame f = tangent_frame(s, x0);
  const SurfacePoint y = chart_point(s, x0, f, LocalCartesian{Vec2(0, 0.3)});
  // (2 + s)^2 / 4 + 0.09 = 1 along the normal ray; evaluated in extended
  // precision.
  const Vec3 expected = Vec3(1.9078784028338913, 0, 0) + 0.3 * f.t2;
  CHECK((y.x - expected).norm() < 1e-8);
  const Vec2 back = local_cartesian(x0, f, y.x).xi;
  CHECK((back - Vec2(0, 0.3)).norm() < 1e-10);
}

TEST_CASE("chart point outside the patch") {
  const Surface s = Surface::unit_sphere();
  const TangentFrame f = tangent_frame(s, Vec3(0, 0, 1));
  CHECK_THROWS_AS(chart_point(s, Vec3(0, 0, 1), f, LocalCartesian{Vec2(0.95, 0)}),
                  PatchError);
}

TEST_CASE("round trip inside half the patch") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const Surface& s : {Surface::unit_sphere(), Surface::ellipsoid(1.5, 1, 0.8),
                           Surface::perturbed_sphere(0.1)}) {
    const double d = s.lyapunov_radius();
    for (int i = 0; i < 200; ++i) {
      const Vec3 x0 = random_surface_point(s, rng);
      const TangentFrame f = tangent_frame(s, x0);
      const Vec2 xi = 0.35 * d * Vec2(u(rng), u(rng));
      const Vec3 y = chart_point(s, x0, f, LocalCartesian{xi}).x;
      const Vec3 y2 = chart_point(s, x0, f, local_cartesian(x0, f, y)).x;
      CHECK((y2 - y).norm() < 1e-9);
      // y = x0 + xi.t + s nu
      const Vec3 r = y - x0 - xi(0) * f.t1 - xi(1) * f.t2;
      CHECK((r - r.dot(f.nu) * f.nu).norm() < 1e-12);
    }
  }
}

TEST_CASE("local polar coordinates") {
  const LocalPolar p = local_polar(LocalCartesian{Vec2(3e-2, 4e-2)});
  CHECK(p.rho == Approx(5e-2).epsilon(1e-15));
  CHECK(p.xi_hat(0) == Approx(0.6).epsilon(1e-15));
  CHECK(p.xi_hat(1) == Approx(0.8).epsilon(1e-15));

  const LocalPolar zero = local_polar(LocalCartesian{});
  CHECK(zero.rho == 0.0);
  CHECK(zero.xi_hat == Vec2(1, 0));

  const Vec2 xi(0.123, -0.456);
  CHECK((from_polar(local_polar(LocalCartesian{xi})).xi - xi).norm() < 1e-15);
}

TEST_CASE("default Lyapunov radii") {
  CHECK(Surface::unit_sphere().lyapunov_radius() == 0.9);
  CHECK(Surface::ellipsoid(1.5, 1, 0.8).lyapunov_radius() == Approx(0.4));
  CHECK(Surface::perturbed_sphere(0.1).lyapunov_radius() == 0.4);
  CHECK(Surface::unit_sphere(0.7).lyapunov_radius() == 0.7);
  CHECK_THROWS_AS(Surface::ellipsoid(1, -1, 1), ConfigError);
}

}
