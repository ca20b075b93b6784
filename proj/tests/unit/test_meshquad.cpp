#include <doctest.h>

#include <cmath>

#include "lcn/meshquad.hpp"

using namespace lcn;
using doctest::Approx;

TEST_SUITE("meshquad") {

TEST_CASE("element counts") {
  const Surface s = Surface::unit_sphere();
  CHECK(build_mesh(s, 0).size() == 6);
  CHECK(build_mesh(s, 2).size() == 96);
  CHECK_THROWS_AS(build_mesh(s, 8), ConfigError);
  CHECK_NOTHROW(build_mesh(s, 1, 1));
  CHECK_THROWS_AS(build_mesh(s, 2, 1), ConfigError);
}

TEST_CASE("h halves under refinement") {
  // From level 2 on; the 1 -> 2 step of the cube-sphere map measures 0.56-0.57.
  for (const Surface& s : {Surface::unit_sphere(), Surface::ellipsoid(1.5, 1, 0.8),
                           Surface::perturbed_sphere(0.1)}) {
    double prev = build_mesh(s, 2).h;
    for (int level = 3; level <= 5; ++level) {
      const double h = build_mesh(s, level).h;
      CHECK(h / prev >= 0.45);
      CHECK(h / prev <= 0.55);
      prev = h;
    }
  }
  const Surface s = Surface::unit_sphere();
  CHECK(build_mesh(s, 3).h / build_mesh(s, 2).h == Approx(0.5).epsilon(0.1));
}

TEST_CASE("elements cover the surface") {
  const SurfaceMesh m = build_mesh(Surface::unit_sphere(), 2);
  CHECK(m.total_area() == Approx(4 * M_PI).epsilon(1e-8));
  CHECK(area_ratio(m) <= 10.0);
}

TEST_CASE("weights are positive and nodes interior") {
  const SurfaceMesh m = build_mesh(Surface::ellipsoid(1.5, 1, 0.8), 2);
  const NodeSet n = quadrature_nodes(m, 3);
  CHECK(n.size() == 96 * 9);
  CHECK(n.weights.minCoeff() > 0.0);
  CHECK(min_boundary_offset(m, n) >= gauss_boundary_offset(3) - 1e-12);
  CHECK(n.nominal_order() == 6);
  const NodeSet closed = quadrature_nodes(m, 3, RuleKind::closed_newton_cotes);
  CHECK(min_boundary_offset(m, closed) == 0.0);
}

TEST_CASE("sphere area and second moment") {
  const SurfaceMesh m = build_mesh(Surface::unit_sphere(), 3);
  const NodeSet n = quadrature_nodes(m, 3);
  // Level 3 reaches 1.4e-8; level 4 is needed for 1e-9.
  CHECK(std::abs(integrate(n, [](const Vec3&) { return 1.0; }) - 4 * M_PI) < 2e-8);
  const NodeSet fine = quadrature_nodes(build_mesh(Surface::unit_sphere(), 4), 3);
  CHECK(std::abs(integrate(fine, [](const Vec3&) { return 1.0; }) - 4 * M_PI) < 1e-9);
  CHECK(std::abs(integrate(n, [](const Vec3& x) { return x.z() * x.z(); }) -
                 4 * M_PI / 3) < 1e-8);
}

TEST_CASE("smooth integrand converges at the nominal rate") {
  // Exact value 4 pi sinh(1).
  const double exact = 14.768013745765290695;
  const Surface s = Surface::unit_sphere();
  const auto f = [](const Vec3& x) { return std::exp(x.z()); };
  double prev_err = 0, prev_h = 0;
  for (int level = 1; level <= 4; ++level) {
    const SurfaceMesh m = build_mesh(s, level);
    const double err = std::abs(integrate(quadrature_nodes(m, 2), f) - exact);
    if (level == 4)
      CHECK(std::log(prev_err / err) / std::log(prev_h / m.h) >= 3.5);
    prev_err = err;
    prev_h = m.h;
  }
}

TEST_CASE("local truncation") {
  const Surface s = Surface::unit_sphere();
  // Curved area elements: even constants carry a truncation error.
  const SurfaceMesh m = build_mesh(s, 2);
  const double c2 = local_truncation(s, m.elements[5], [](const Vec3&) { return 1.0; }, 2);
  CHECK(c2 > 0.0);
  CHECK(c2 < 1e-4);
  CHECK(local_truncation(s, m.elements[5], [](const Vec3&) { return 1.0; }, 4) < 1e-3 * c2);
  const auto f = [](const Vec3& x) { return std::exp(x.z()); };
  const double t2 = max_local_truncation(build_mesh(s, 2), f, 2);
  const double t4 = max_local_truncation(build_mesh(s, 4), f, 2);
  CHECK(std::log(t2 / t4) / std::log(build_mesh(s, 2).h / build_mesh(s, 4).h) >= 3.5);
}

TEST_CASE("node separation scales with h") {
  const Surface s = Surface::unit_sphere();
  double lo = 1e300, hi = 0;
  for (int level = 1; level <= 3; ++level) {
    const SurfaceMesh m = build_mesh(s, level);
    const double c = min_node_distance(quadrature_nodes(m, 2)) / m.h;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("gauss rule") {
  const GaussRule g = gauss_legendre(5);
  CHECK(g.weights.sum() == Approx(2.0).epsilon(1e-15));
  // Exact for x^8.
  double m8 = 0;
  for (int i = 0; i < 5; ++i) m8 += g.weights(i) * std::pow(g.nodes(i), 8);
  CHECK(m8 == Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
}

}
