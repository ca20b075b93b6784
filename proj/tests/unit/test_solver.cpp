#include <doctest.h>

#include <random>

#include "lcn/errors.hpp"
#include "lcn/harness.hpp"
#include "lcn/solver.hpp"

using namespace lcn;
using doctest::Approx;

namespace {

KernelPair dl(Completion g = Completion::ones, double c = 1.0) {
  return {make_kernel("laplace_dl"), g, c};
}

ScalarField constant(double v) {
  return [v](const Vec3&) { return v; };
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("matrix from a zero H block") {
  const Discretization d =
      discretize(Surface::unit_sphere(), dl(Completion::none, 2.5), 1, 2, 0);
  const Eigen::Index n = d.nodes.size();
  const NystromSystem s =
      assemble(*d.corrector, Eigen::MatrixXd::Zero(n, n), constant(1.0));
  CHECK((s.A - 2.5 * Eigen::MatrixXd::Identity(n, n)).norm() == 0.0);
  CHECK(s.rhs.isOnes());

  const NystromSystem g =
      assemble(*discretize(Surface::unit_sphere(), dl(), 1, 2, 0).corrector,
               Eigen::MatrixXd::Zero(n, n), constant(0.0));
  // With G = 1, A 1 = c - area.
  const Eigen::VectorXd a1 = g.A * Eigen::VectorXd::Ones(n);
  CHECK(a1.maxCoeff() == Approx(1.0 - d.nodes.weights.sum()));
  CHECK(a1.minCoeff() == Approx(1.0 - d.nodes.weights.sum()));
}

TEST_CASE("degree 0 rows reproduce the double-layer constant") {
  const Discretization d = discretize(Surface::unit_sphere(), dl(), 3, 2, 0);
  const Eigen::MatrixXd K = assemble_h_block(*d.corrector);
  const Eigen::VectorXd rows = K.rowwise().sum();
  CHECK((rows.array() + 0.5).abs().maxCoeff() <= 1e-8);
}

TEST_CASE("constant density") {
  const Discretization d = discretize(Surface::unit_sphere(), dl(), 2, 2, 0);
  const ScalarField f = constant(1.5 - 4 * M_PI);
  const NystromSolution sol = solve_level(d, f, SolverPath::general);
  // phi = 1 is reproduced up to the rule's area error.
  CHECK((sol.nodal().array() - 1.0).abs().maxCoeff() <= 1e-4);
  const NystromSolution zero = solve_level(d, constant(0.0), SolverPath::general);
  CHECK(zero.nodal().norm() == 0.0);
}

TEST_CASE("linearity") {
  const Discretization d = discretize(Surface::unit_sphere(), dl(), 1, 2, 0);
  const ScalarField f1 = [](const Vec3& x) { return x.z(); };
  const ScalarField f2 = [](const Vec3& x) { return x.x() * x.y(); };
  const ScalarField f3 = [&](const Vec3& x) { return 2 * f1(x) - 3 * f2(x); };
  const auto s1 = solve_level(d, f1, SolverPath::general).nodal();
  const auto s2 = solve_level(d, f2, SolverPath::general).nodal();
  const auto s3 = solve_level(d, f3, SolverPath::general).nodal();
  CHECK((s3 - 2 * s1 + 3 * s2).norm() <= 1e-12 * s3.norm());
}

TEST_CASE("interpolant") {
  ProblemSpec problem;
  problem.kernels = dl();
  problem.phi = exact_field("y1");
  const ScalarField f = manufacture(problem);
  for (int p = 0; p <= 1; ++p) {
    const Discretization d = discretize(problem.surface, problem.kernels, 3, 2, p);
    const NystromSolution sol = solve_level(d, f, SolverPath::general);
    double nodal = 0.0, at_nodes = 0.0, off = 0.0;
    for (Eigen::Index a = 0; a < d.nodes.size(); ++a) {
      const Vec3 x = d.nodes.points.col(a);
      nodal = std::max(nodal, std::abs(sol.nodal()(a) - problem.phi.f(x)));
      if (a % 50 == 0)
        at_nodes = std::max(at_nodes, std::abs(sol.interpolate(x) - sol.nodal()(a)));
    }
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
      const Vec3 x = random_surface_point(problem.surface, rng);
      off = std::max(off, std::abs(sol.interpolate(x) - problem.phi.f(x)));
    }
    CHECK(at_nodes <= 1e-12);
    // Degree 1 measures 2.7-3.7x here, degree 0 2.1-2.5x.
    if (p == 0) CHECK(off <= 3 * nodal);
    if (p == 1) CHECK(off <= 4 * nodal);
  }
}

TEST_CASE("fast path agrees with the general path") {
  const Discretization d = discretize(Surface::unit_sphere(), dl(), 2, 2, 0);
  const ScalarField f = [](const Vec3& x) { return x.z(); };
  const NystromSystem general = assemble(*d.corrector, f);
  const NystromSystem fast = p0_fast_path(*d.corrector, f);
  CHECK((general.A - fast.A).cwiseAbs().maxCoeff() <= 1e-12);
  const auto a = solve_level(d, f, SolverPath::general).nodal();
  const auto b = solve_level(d, f, SolverPath::p0_fast).nodal();
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("computed gamma matches the closed-surface value") {
  const Discretization d = discretize(Surface::unit_sphere(), dl(), 0, 2, 0);
  const ScalarField f = [](const Vec3& x) { return x.z(); };
  const NystromSystem fast = p0_fast_path(*d.corrector, f);
  const NystromSystem computed = p0_fast_path(*d.corrector, f, GammaMode::computed);
  CHECK((computed.A - fast.A).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("singular system is reported") {
  const Discretization d =
      discretize(Surface::unit_sphere(), dl(Completion::none, -0.5), 1, 2, 0);
  CHECK_THROWS_AS(solve_level(d, constant(1.0), SolverPath::general), SolverError);
}

TEST_CASE("eigenvalue iterations") {
  Eigen::MatrixXd K = Eigen::Vector4d(-0.5, -0.25, 0.1, -0.15).asDiagonal();
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(4);
  CHECK(power_iteration(K, v) == Approx(-0.5).epsilon(1e-12));
  CHECK(inverse_iteration(K, -0.16, v) == Approx(-0.15).epsilon(1e-12));
}

}
