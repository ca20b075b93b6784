#include "lcn/harness.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>

namespace lcn {

ExactField exact_field(const std::string& name) {
  if (name == "one") return {name, [](const Vec3&) { return 1.0; }, 0};
  if (name == "zero") return {name, [](const Vec3&) { return 0.0; }, -1};
  if (name == "y1") return {name, [](const Vec3& x) { return x.z(); }, 1};
  // Harmonic polynomials, so their restrictions to the sphere are Y_2's.
  if (name == "y20")
    return {name,
            [](const Vec3& x) { return 1.5 * x.z() * x.z() - 0.5 * x.squaredNorm(); },
            2};
  if (name == "xy") return {name, [](const Vec3& x) { return x.x() * x.y(); }, 2};
  if (name == "exp_z")
    return {name, [](const Vec3& x) { return std::exp(x.z()); }, -1};
  throw ConfigError("unknown problem.phi '" + name +
                    "' (one, zero, y1, y20, xy, exp_z)");
}

ProblemSpec problem_spec(const RunConfig& config) {
  ProblemSpec problem{config.surface(), config.kernels(), exact_field(config.phi),
                      config.forcing, config.oracle};
  if (problem.forcing == ForcingMode::analytic &&
      !analytic_forcing_available(problem))
    throw ConfigError("analytic forcing needs the unit sphere, the Laplace "
                      "double layer and a harmonic phi");
  return problem;
}

bool analytic_forcing_available(const ProblemSpec& problem) {
  if (problem.phi.name == "zero") return true;
  const Surface& s = problem.surface;
  return s.kind() == SurfaceKind::sphere && problem.kernels.is_laplace_dl() &&
         problem.phi.harmonic_degree >= 0;
}

namespace {

struct PointLess {
  bool operator()(const Vec3& a, const Vec3& b) const {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                        b.data() + 3);
  }
};

}  // namespace

ScalarField manufacture(const ProblemSpec& problem) {
  const ScalarField phi = problem.phi.f;
  const double c = problem.kernels.c;
  if (problem.phi.name == "zero") return [](const Vec3&) { return 0.0; };

  const bool analytic =
      problem.forcing == ForcingMode::analytic ||
      (problem.forcing == ForcingMode::automatic &&
       analytic_forcing_available(problem));
  if (analytic) {
    if (!analytic_forcing_available(problem))
      throw ConfigError("no closed-form forcing for this problem");
    const int n = problem.phi.harmonic_degree;
    const double lambda = sphere_dl_eigenvalue(n);
    // G = 1 integrates phi; only the constant survives, with area 4 pi.
    double g_part = 0.0;
    if (problem.kernels.G == Completion::ones && n == 0)
      g_part = 4.0 * M_PI * phi(Vec3(0, 0, 1));
    return [phi, c, lambda, g_part](const Vec3& x) {
      return (c - lambda) * phi(x) - g_part;
    };
  }

  auto oracle = std::make_shared<const Oracle>(problem.surface,
                                               problem.kernels, problem.oracle);
  auto memo = std::make_shared<std::map<Vec3, double, PointLess>>();
  return [oracle, memo, phi, c](const Vec3& x) {
    const auto it = memo->find(x);
    if (it != memo->end()) return it->second;
    const double v = c * phi(x) - oracle->apply(phi, x).value;
    memo->emplace(x, v);
    return v;
  };
}

ConvergenceOptions convergence_options(const RunConfig& config) {
  ConvergenceOptions o;
  o.p = config.p;
  o.q = config.q;
  o.levels = config.levels;
  o.seed = config.seed;
  o.eval_points = config.eval_points;
  o.path = config.path;
  o.pou = config.pou;
  o.moments = config.moments;
  o.skip_infeasible = config.skip_infeasible;
  o.compare_fast_path = config.compare_fast_path;
  return o;
}

double eoc(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

Discretization discretize(const Surface& surface, const KernelPair& kernels,
                          int level, int q, int p, const PouOptions& pou,
                          const MomentOptions& moments) {
  SurfaceMesh mesh = build_mesh(surface, level);
  NodeSet nodes = quadrature_nodes(mesh, q);
  PartitionOfUnity partition = build_pou(mesh, nodes, p, pou);
  auto corrector = std::make_shared<const LocalCorrector>(
      mesh, nodes, std::move(partition), kernels, p, moments);
  return {std::move(mesh), std::move(nodes), std::move(corrector)};
}

namespace {

GammaMode gamma_mode(const LocalCorrector& corrector) {
  return corrector.kernels().is_laplace_dl() &&
                 corrector.moment_options().analytic_dl
             ? GammaMode::analytic
             : GammaMode::computed;
}

}  // namespace

NystromSolution solve_level(const Discretization& disc, const ScalarField& f,
                            SolverPath path) {
  if (path == SolverPath::p0_fast) {
    const NystromSystem sys =
        p0_fast_path(*disc.corrector, f, gamma_mode(*disc.corrector));
    return solve(disc.corrector, sys, f);
  }
  const NystromSystem sys = assemble(*disc.corrector, f);
  return solve(disc.corrector, sys, f);
}

namespace {

const double nan = std::numeric_limits<double>::quiet_NaN();

void check_budget(const ConvergenceOptions& o) {
  if (o.levels.first < 0 || o.levels.last < o.levels.first)
    throw ConfigError("levels must be ascending and nonnegative");
  if (o.path == SolverPath::p0_fast || o.compare_fast_path)
    if (o.p != 0) throw ConfigError("the fast path needs p = 0");
  if (o.levels.last > default_max_level)
    throw ConfigError("level " + std::to_string(o.levels.last) +
                      " exceeds the mesh budget");
  // Matrix plus its LU factors.
  const double n = 6.0 * std::pow(4.0, o.levels.last) * o.q * o.q;
  const double bytes = 2.0 * 8.0 * n * n;
  if (bytes > o.max_matrix_bytes)
    throw ConfigError("level " + std::to_string(o.levels.last) + " with q = " +
                      std::to_string(o.q) + " needs about " +
                      std::to_string(static_cast<long>(bytes / 1e6)) +
                      " MB of dense storage");
}

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

ConvergenceReport run_convergence(const ProblemSpec& problem,
                                  const ConvergenceOptions& options) {
  check_budget(options);
  ConvergenceReport report;
  report.options = options;

  const ScalarField f = manufacture(problem);
  const ScalarField& phi = problem.phi.f;

  // The same evaluation points at every level.
  std::mt19937_64 rng(options.seed);
  std::vector<Vec3> points;
  for (int i = 0; i < options.eval_points; ++i)
    points.push_back(random_surface_point(problem.surface, rng));

  for (int level = options.levels.first; level <= options.levels.last;
       ++level) {
    const auto start = std::chrono::steady_clock::now();
    LevelResult r;
    r.level = level;
    r.path_difference = nan;
    r.eoc_nodal = r.eoc_interp = nan;
    try {
      r.h = build_mesh(problem.surface, level).h;
      r.n = static_cast<long>(6 * (1L << (2 * level)) * options.q * options.q);
      const Discretization disc =
          discretize(problem.surface, problem.kernels, level, options.q,
                     options.p, options.pou, options.moments);

      Eigen::VectorXd exact(disc.nodes.size());
      for (Eigen::Index a = 0; a < exact.size(); ++a)
        exact(a) = phi(disc.nodes.points.col(a));

      std::optional<NystromSolution> sol;
      Eigen::VectorXd general_phi;
      if (options.path == SolverPath::general || options.compare_fast_path) {
        std::vector<NodeDiagnostics> diag;
        const NystromSystem sys = assemble(*disc.corrector, f, &diag);
        sol.emplace(solve(disc.corrector, sys, f));
        general_phi = sol->nodal();
        for (const auto& d : diag) r.max_abs_R = std::max(r.max_abs_R, d.max_abs_R);
      } else {
        r.max_abs_R = nan;
      }
      if (options.path == SolverPath::p0_fast || options.compare_fast_path) {
        NystromSolution fast = solve_level(disc, f, SolverPath::p0_fast);
        if (options.compare_fast_path)
          r.path_difference = max_abs_diff(general_phi, fast.nodal());
        if (options.path == SolverPath::p0_fast) sol.emplace(std::move(fast));
      }

      r.residual = sol->residual();
      r.nodal_error = max_abs_diff(sol->nodal(), exact);
      for (const Vec3& x : points)
        r.interp_error =
            std::max(r.interp_error, std::abs(sol->interpolate(x) - phi(x)));
    } catch (const MomentSystemError& e) {
      if (!options.skip_infeasible) throw LevelError(level, e.what());
      r.feasible = false;
      r.note = e.what();
    } catch (const ConstructionError& e) {
      if (!options.skip_infeasible) throw LevelError(level, e.what());
      r.feasible = false;
      r.note = e.what();
    } catch (const LevelError&) {
      throw;
    } catch (const Error& e) {
      throw LevelError(level, e.what());
    }
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (!report.levels.empty()) {
      const LevelResult& prev = report.levels.back();
      if (prev.feasible && r.feasible) {
        r.eoc_nodal = eoc(prev.nodal_error, r.nodal_error, prev.h, r.h);
        r.eoc_interp = eoc(prev.interp_error, r.interp_error, prev.h, r.h);
      }
    }
    report.levels.push_back(std::move(r));
  }
  return report;
}

std::vector<const LevelResult*> ConvergenceReport::feasible() const {
  std::vector<const LevelResult*> out;
  for (const auto& r : levels)
    if (r.feasible) out.push_back(&r);
  return out;
}

double ConvergenceReport::terminal_eoc() const {
  return levels.empty() ? nan : levels.back().eoc_nodal;
}

double ConvergenceReport::fitted_rate() const {
  const auto ok = feasible();
  if (ok.size() < 2) return nan;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ok.size());
  for (const LevelResult* r : ok) {
    const double x = std::log(r->h), y = std::log(r->nodal_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string ConvergenceReport::csv() const {
  CsvTable t({"level", "n", "h", "feasible", "nodal_error", "interp_error",
              "eoc_nodal", "eoc_interp", "path_difference", "max_abs_R",
              "residual"});
  for (const auto& r : levels)
    t.row() << r.level << r.n << r.h << r.feasible << r.nodal_error
            << r.interp_error << r.eoc_nodal << r.eoc_interp
            << r.path_difference << r.max_abs_R << r.residual;
  return t.str();
}

std::string ConvergenceReport::table() const {
  const auto sci = [](double v) {
    if (std::isnan(v)) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return std::string(buf);
  };
  const auto fix = [](double v) {
    if (std::isnan(v)) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  CsvTable t({"level", "n", "h", "nodal_err", "eoc", "interp_err", "eoc_i",
              "max|R|", "seconds"});
  for (const auto& r : levels) {
    if (!r.feasible) {
      t.row() << r.level << r.n << sci(r.h) << "infeasible" << "-" << "-"
              << "-" << "-" << fix(r.seconds);
      continue;
    }
    t.row() << r.level << r.n << sci(r.h) << sci(r.nodal_error)
            << fix(r.eoc_nodal) << sci(r.interp_error) << fix(r.eoc_interp)
            << sci(r.max_abs_R) << fix(r.seconds);
  }
  std::string out;
  for (const auto& [k, v] : echo) out += "# " + k + " = " + v + "\n";
  out += t.aligned();
  for (const auto& r : levels)
    if (!r.feasible) out += "level " + std::to_string(r.level) + ": " + r.note + "\n";
  out += "terminal EOC " + fix(terminal_eoc()) + ", fitted rate " +
         fix(fitted_rate()) + "\n";
  return out;
}

}  // namespace lcn
