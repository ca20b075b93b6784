#include <doctest.h>

#include <random>

#include "lcn/pou.hpp"

using namespace lcn;
using doctest::Approx;

namespace {

struct Fixture {
  SurfaceMesh mesh;
  NodeSet nodes;
  Fixture(int level, int q, const Surface& s = Surface::unit_sphere())
      : mesh(build_mesh(s, level)), nodes(quadrature_nodes(mesh, q)) {}
};

// Surface point at chord `t` from x along the first tangent direction.
Vec3 at_chord(const Surface& s, const Vec3& x, double t) {
  const TangentFrame f = tangent_frame(s, x);
  double lo = 0, hi = t;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double c = (chart_point(s, x, f, LocalCartesian{Vec2(mid, 0)}).x - x).norm();
    (c < t ? lo : hi) = mid;
  }
  return chart_point(s, x, f, LocalCartesian{Vec2(0.5 * (lo + hi), 0)}).x;
}

}  // namespace

TEST_SUITE("pou") {

TEST_CASE("nodal pair is a Kronecker delta at nodes") {
  const Fixture fx(2, 2);
  const PartitionOfUnity pou = build_pou(fx.mesh, fx.nodes, 0);
  CHECK(pou.kind() == PouKind::nodal);
  for (Eigen::Index a = 0; a < fx.nodes.size(); a += 7) {
    const Vec3 xa = fx.nodes.points.col(a);
    CHECK(pou.zeta_hat(a, xa) == 1.0);
    CHECK(pou.zeta(a, xa) == 0.0);
    const auto J = pou.support_set(xa);
    REQUIRE(J.size() == 1);
    CHECK(J[0] == a);
    for (Eigen::Index b = 0; b < fx.nodes.size(); b += 13)
      if (b != a) CHECK(pou.zeta_hat(a, fx.nodes.points.col(b)) == 0.0);
  }
}

TEST_CASE("complementarity and range") {
  const Fixture fx(2, 2);
  std::mt19937_64 rng(3);
  for (int p = 0; p <= 2; ++p) {
    const PartitionOfUnity pou = build_pou(fx.mesh, fx.nodes, p);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 x = random_surface_point(fx.mesh.surface, rng);
      for (const auto& e : pou.support(x)) {
        const double z = pou.zeta(e.index, x);
        CHECK(z + pou.zeta_hat(e.index, x) == 1.0);
        CHECK(z >= 0.0);
        CHECK(z <= 1.0);
        // Quadratic bound with the pair's radius.
        const double t = (x - fx.nodes.points.col(e.index)).norm();
        CHECK(z <= (t / pou.radius(e.index)) * (t / pou.radius(e.index)) + 1e-15);
      }
    }
  }
}

TEST_CASE("radial pair values") {
  const Fixture fx(2, 2);
  const PartitionOfUnity pou = build_pou(fx.mesh, fx.nodes, 1);
  CHECK(pou.kind() == PouKind::radial);
  const Eigen::Index a = 17;
  const Vec3 xa = fx.nodes.points.col(a);
  const double r = pou.radius(a);
  CHECK(r == Approx(radial_kappa(1, 2, 1.0) * fx.mesh.h));
  CHECK(pou.zeta(a, xa) == 0.0);
  CHECK(pou.zeta(a, at_chord(fx.mesh.surface, xa, 0.5 * r)) == Approx(0.25).epsilon(1e-10));
  CHECK(pou.zeta(a, at_chord(fx.mesh.surface, xa, 1.01 * r)) == 1.0);
  CHECK(pou.zeta_hat(a, at_chord(fx.mesh.surface, xa, 1.01 * r)) == 0.0);
}

TEST_CASE("support counts for p = 1 at level 3") {
  const Fixture fx(3, 2);
  const PartitionOfUnity pou = build_pou(fx.mesh, fx.nodes, 1);
  std::size_t lo = 1000, hi = 0;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto n = pou.support_set(random_surface_point(fx.mesh.surface, rng)).size();
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  for (const Vec3& x : audit_points(fx.mesh, fx.nodes))
    lo = std::min(lo, pou.support_set(x).size());
  CHECK(lo >= 3);
  CHECK(hi <= 30);
}

TEST_CASE("overlap for p = 0") {
  std::mt19937_64 rng(9);
  for (int level = 1; level <= 3; ++level) {
    const Fixture fx(level, 2);
    const PartitionOfUnity pou = build_pou(fx.mesh, fx.nodes, 0);
    double lo = 1e300;
    for (int i = 0; i < 2000; ++i)
      lo = std::min(lo, pou.overlap(random_surface_point(fx.mesh.surface, rng)));
    CHECK(lo >= 0.5);
  }
}

TEST_CASE("audit rejects undersized supports") {
  const Fixture fx(2, 2);
  PouOptions tiny;
  tiny.kappa_scale = 0.3;
  CHECK_THROWS_AS(build_pou(fx.mesh, fx.nodes, 2, tiny), ConstructionError);
  PouOptions bad;
  bad.theta = 1.5;
  CHECK_THROWS_AS(build_pou(fx.mesh, fx.nodes, 0, bad), ConfigError);
}

TEST_CASE("cutoff function") {
  const double d = 0.9;
  const CutoffFunction eta = CutoffFunction::for_radius(d);
  CHECK(eta(0.0) == 1.0);
  CHECK(eta(d / 4) == 1.0);
  CHECK(eta(d / 2) == 0.0);
  CHECK(eta(0.6) == 0.0);
  CHECK(eta(3 * d / 8) == Approx(0.5).epsilon(1e-14));
  for (double r = 0; r < d; r += 0.01) {
    CHECK(eta(r) >= 0.0);
    CHECK(eta(r) <= 1.0);
  }
  CHECK(CutoffFunction::unit()(5.0) == 1.0);
}

}
