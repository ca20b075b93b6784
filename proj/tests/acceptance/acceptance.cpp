// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
// Usage: acceptance [criterion numbers...]   (default: all)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lcn/harness.hpp"
#include "lcn/invariants.hpp"
#include "lcn/oracle.hpp"
#include "lcn/solver.hpp"

using namespace lcn;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string levels_summary(const ConvergenceReport& r) {
  std::string s;
  for (const LevelResult& l : r.levels) {
    if (!s.empty()) s += "; ";
    s += "L" + std::to_string(l.level);
    if (!l.feasible) {
      s += " infeasible";
      continue;
    }
    s += fmt(" e=%.3e", l.nodal_error);
    if (std::isfinite(l.eoc_nodal)) s += fmt(" eoc=%.2f", l.eoc_nodal);
  }
  return s;
}

KernelPair dl(Completion g = Completion::ones) {
  return {std::make_shared<LaplaceDoubleLayer>(), g, 1.0};
}

ConvergenceReport sphere_y1(int p, int q, LevelRange levels, bool compare = false) {
  ProblemSpec problem;
  problem.kernels = dl();
  problem.phi = exact_field("y1");
  ConvergenceOptions o;
  o.p = p;
  o.q = q;
  o.levels = levels;
  o.seed = kSeed;
  o.eval_points = 200;
  o.skip_infeasible = true;
  o.compare_fast_path = compare;
  return run_convergence(problem, o);
}

Outcome gauss_flux() {
  const Surface s = Surface::unit_sphere();
  const Oracle oracle(s, dl(Completion::none));
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = random_surface_point(s, rng);
    worst = std::max(worst, std::abs(oracle.apply([](const Vec3&) { return 1.0; }, x).value + 0.5));
  }
  return {worst <= 1e-6, fmt("max |flux + 1/2| = %.2e over 20 points", worst)};
}

Outcome moment_exactness() {
  double worst = 0.0;
  std::string detail;
  for (int p = 0; p <= 2; ++p) {
    const Discretization d = discretize(Surface::unit_sphere(), dl(), 3, 2, p);
    double wp = 0.0;
    for (Eigen::Index a = 0; a < d.nodes.size(); ++a)
      wp = std::max(wp, moment_defect(*d.corrector, d.corrector->correct(d.nodes.points.col(a))));
    detail += fmt(" p%.0f:", p) + fmt("%.2e", wp);
    worst = std::max(worst, wp);
  }
  return {worst <= 1e-8, "max moment defect" + detail};
}

Outcome rate_p2() {
  const ConvergenceReport r = sphere_y1(2, 2, {1, 4});
  const double e = r.terminal_eoc();
  return {r.feasible().size() >= 2 && e >= 1.7,
          fmt("terminal EOC %.2f; ", e) + levels_summary(r)};
}

Outcome rate_p0() {
  const ConvergenceReport r = sphere_y1(0, 2, {1, 4}, true);
  double diff = 0.0;
  for (const LevelResult& l : r.levels) diff = std::max(diff, l.path_difference);
  const double e = r.terminal_eoc();
  return {e >= 0.7 && diff <= 1e-10,
          fmt("terminal EOC %.2f, ", e) + fmt("fast/general max diff %.2e; ", diff) +
              levels_summary(r)};
}

Outcome p_sensitivity() {
  const ConvergenceReport r1 = sphere_y1(1, 3, {1, 3});
  const ConvergenceReport r2 = sphere_y1(2, 3, {1, 3});
  const double e1 = r1.terminal_eoc();
  const double f1 = r1.fitted_rate(), f2 = r2.fitted_rate();
  return {e1 >= 0.7 && f1 <= f2 + 0.3,
          fmt("p=1 terminal EOC %.2f, ", e1) + fmt("fitted p=1 %.2f vs ", f1) +
              fmt("p=2 %.2f; p=1 ", f2) + levels_summary(r1) + " | p=2 " +
              levels_summary(r2)};
}

Outcome frame_invariance() {
  double worst = 0.0;
  std::string detail;
  for (int p = 1; p <= 2; ++p) {
    const Discretization d = discretize(Surface::unit_sphere(), dl(), 2, 2, p);
    const double v = frame_invariance_defect(*d.corrector, 100, kSeed + p);
    detail += fmt(" p%.0f:", p) + fmt("%.2e", v);
    worst = std::max(worst, v);
  }
  return {worst <= 1e-10, "max |R - R'| over 100 node/rotation pairs" + detail};
}

Outcome vanishing() {
  bool ok = true;
  std::string detail;
  for (int p = 0; p <= 1; ++p) {
    double prev = INFINITY;
    detail += fmt(" p%.0f:", p);
    for (int level = 2; level <= 4; ++level) {
      const double v = max_correction(*discretize(Surface::unit_sphere(), dl(), level, 2, p).corrector);
      ok = ok && v < prev;
      detail += fmt(" %.3e", v);
      prev = v;
    }
  }
  return {ok, "max |R| at levels 2,3,4" + detail};
}

Outcome bounded_sums() {
  double lo = INFINITY, hi = 0.0;
  std::string detail;
  for (int p = 0; p <= 2; ++p) {
    detail += fmt(" p%.0f:", p);
    for (int level = 1; level <= 4; ++level) {
      const double v = max_raw_singular_sum(*discretize(Surface::unit_sphere(), dl(), level, 2, p).corrector);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      detail += fmt(" %.4f", v);
    }
  }
  return {hi / lo <= 2.0, fmt("max/min %.3f;", hi / lo) + detail};
}

Outcome quadrature_order() {
  bool ok = true;
  std::string detail;
  for (int q = 2; q <= 3; ++q) {
    const TruncationStudy t = truncation_study(
        Surface::unit_sphere(), [](const Vec3& x) { return std::exp(x.z()); }, q, {1, 4});
    const double e = t.eoc.back();
    ok = ok && e >= 2 * q - 0.5;
    detail += fmt(" q=%.0f:", q) + fmt(" EOC %.2f", e) + fmt(" (need %.1f)", 2 * q - 0.5);
  }
  return {ok, "exp(z) local truncation" + detail};
}

Outcome spectrum() {
  // The oracle fixes lambda_1 first.
  const Surface s = Surface::unit_sphere();
  const Oracle oracle(s, dl(Completion::none));
  std::mt19937_64 rng(kSeed);
  double oracle_err = 0.0;
  for (int i = 0; i < 5; ++i) {
    Vec3 x = random_surface_point(s, rng);
    if (std::abs(x.z()) < 0.2) x = Vec3(x.x(), x.y(), 0.6).normalized();
    const double ratio = oracle.apply([](const Vec3& y) { return y.z(); }, x).value / x.z();
    oracle_err = std::max(oracle_err, std::abs(ratio + 1.0 / 6.0));
  }
  bool ok = oracle_err <= 1e-6;
  std::string detail = fmt("oracle |H Y1 / Y1 + 1/6| = %.1e;", oracle_err);

  double prev0 = INFINITY, prev1 = INFINITY, e0 = 0, e1 = 0;
  for (int level = 2; level <= 4; ++level) {
    const Discretization d = discretize(s, dl(), level, 2, 2);
    const Eigen::MatrixXd K = assemble_h_block(*d.corrector);
    std::mt19937_64 g(kSeed + level);
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(K.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = nd(g);
    e0 = std::abs(power_iteration(K, v) + 0.5);
    e1 = std::abs(inverse_iteration(K, -0.15, v) + 1.0 / 6.0);
    ok = ok && e0 < prev0 && e1 < prev1;
    detail += fmt(" L%.0f", level) + fmt(" |l0+1/2|=%.2e", e0) + fmt(" |l1+1/6|=%.2e", e1);
    prev0 = e0;
    prev1 = e1;
  }
  ok = ok && e0 <= 5e-3 && e1 <= 5e-3;
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "gauss flux identity (oracle)", 30, gauss_flux},
      {2, "moment-condition exactness, p = 0..2", 300, moment_exactness},
      {3, "rate p=2, q=2, levels 1-4", 1200, rate_p2},
      {4, "rate p=0, general and fast paths", 0, rate_p0},
      {5, "p-sensitivity at q=3", 0, p_sensitivity},
      {6, "frame invariance", 0, frame_invariance},
      {7, "vanishing corrections", 0, vanishing},
      {8, "bounded discrete sums", 0, bounded_sums},
      {9, "quadrature order", 0, quadrature_order},
      {10, "spectrum sanity", 0, spectrum},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += fmt(" [over the %.0f s budget]", c.budget_seconds);
    }
    failed += !o.pass;
    std::printf("%s C%d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
