// Command-line front end: solve, converge, invariants, moments.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "lcn/harness.hpp"
#include "lcn/invariants.hpp"

namespace fs = std::filesystem;
using namespace lcn;

namespace {

struct Common {
  std::string config_path;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string levels;
  std::optional<int> p, q;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--levels", c.levels, "mesh levels a..b");
  cmd->add_option("--p", c.p, "correction degree");
  cmd->add_option("--q", c.q, "Gauss points per direction");
}

// Command-line flags override the file.
RunConfig resolve(const Common& c, bool single_level) {
  Config config = c.config_path.empty() ? Config() : Config::load(c.config_path);
  if (c.seed) config.set("run.seed", std::to_string(*c.seed));
  if (c.p) config.set("correction.p", std::to_string(*c.p));
  if (c.q) config.set("quad.q", std::to_string(*c.q));
  if (!c.levels.empty()) {
    const LevelRange r = parse_levels(c.levels);
    if (single_level) {
      if (r.first != r.last)
        throw ConfigError("this command takes a single level");
      config.set("mesh.level", std::to_string(r.first));
    }
    config.set("run.levels", c.levels);
  }
  return run_config(config);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

fs::path out_dir(const Common& c) {
  fs::create_directories(c.out);
  return fs::path(c.out);
}

int cmd_solve(const Common& c) {
  const RunConfig rc = resolve(c, true);
  const ProblemSpec problem = problem_spec(rc);
  const ScalarField f = manufacture(problem);
  const Discretization disc = discretize(problem.surface, problem.kernels,
                                         rc.level, rc.q, rc.p, rc.pou, rc.moments);
  const NystromSolution sol = solve_level(disc, f, rc.path);
  CsvTable t({"node", "element", "x", "y", "z", "weight", "phi_h", "phi_exact"});
  double err = 0.0;
  for (Eigen::Index a = 0; a < disc.nodes.size(); ++a) {
    const Vec3 x = disc.nodes.points.col(a);
    const double exact = problem.phi.f(x);
    err = std::max(err, std::abs(sol.nodal()(a) - exact));
    t.row() << static_cast<long>(a) << disc.nodes.element[static_cast<std::size_t>(a)]
            << x.x() << x.y() << x.z() << disc.nodes.weights(a) << sol.nodal()(a)
            << exact;
  }
  const fs::path path = out_dir(c) / "solution.csv";
  write_file(path, t.str());
  std::cout << "level " << rc.level << ", n = " << disc.nodes.size()
            << ", h = " << format_double(disc.mesh.h)
            << ", max nodal error = " << format_double(err) << "\n"
            << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_converge(const Common& c) {
  const RunConfig rc = resolve(c, false);
  ConvergenceReport report =
      run_convergence(problem_spec(rc), convergence_options(rc));
  report.echo = rc.echo();
  const fs::path dir = out_dir(c);
  write_file(dir / "converge.csv", report.csv());
  write_file(dir / "converge.txt", report.table());
  std::cout << report.table() << "wrote " << (dir / "converge.csv").string()
            << "\n";
  return 0;
}

int cmd_invariants(const Common& c) {
  const RunConfig rc = resolve(c, false);
  const InvariantReport report = run_invariants(invariant_options(rc));
  const fs::path dir = out_dir(c);
  write_file(dir / "invariants.csv", report.csv());
  std::cout << report.text();
  return report.ok() ? 0 : 1;
}

int cmd_moments(const Common& c) {
  const RunConfig rc = resolve(c, true);
  const Discretization disc = discretize(rc.surface(), rc.kernels(), rc.level,
                                         rc.q, rc.p, rc.pou, rc.moments);
  std::vector<NodeDiagnostics> diag;
  assemble_h_block(*disc.corrector, &diag);
  CsvTable t({"node", "x", "y", "z", "delta0", "min_eigenvalue", "max_abs_R",
              "moment_error", "support"});
  for (std::size_t a = 0; a < diag.size(); ++a) {
    const Vec3 x = disc.nodes.points.col(static_cast<Eigen::Index>(a));
    const NodeDiagnostics& d = diag[a];
    t.row() << static_cast<long>(a) << x.x() << x.y() << x.z() << d.delta0
            << d.min_eigenvalue << d.max_abs_R << d.moment_error
            << static_cast<long>(d.support);
  }
  const fs::path path = out_dir(c) / "moments.csv";
  write_file(path, t.str());
  std::cout << "wrote " << path.string() << " (" << diag.size() << " nodes)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally corrected Nystrom solver for weakly singular surface "
               "integral equations"};
  app.require_subcommand(1);
  Common common;
  auto* solve_cmd = app.add_subcommand("solve", "solve one level, write nodal CSV");
  auto* conv_cmd = app.add_subcommand("converge", "convergence study with EOC table");
  auto* inv_cmd = app.add_subcommand("invariants", "run the property suites");
  auto* mom_cmd = app.add_subcommand("moments", "per-node moment diagnostics CSV");
  for (auto* cmd : {solve_cmd, conv_cmd, inv_cmd, mom_cmd}) add_common(cmd, common);
  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(common);
    if (conv_cmd->parsed()) return cmd_converge(common);
    if (inv_cmd->parsed()) return cmd_invariants(common);
    if (mom_cmd->parsed()) return cmd_moments(common);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
