#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcn/config.hpp"
#include "lcn/csv.hpp"
#include "lcn/oracle.hpp"
#include "lcn/solver.hpp"

namespace lcn {

/// Exact solution used to manufacture data. `harmonic_degree` is n when the
/// field restricted to the unit sphere is a degree-n spherical harmonic,
/// -1 otherwise.
struct ExactField {
  std::string name;
  ScalarField f;
  int harmonic_degree = -1;
};

/// one, y1 (= z), y20, xy, exp_z, zero.
ExactField exact_field(const std::string& name);

/// Double-layer eigenvalue of degree-n harmonics on the unit sphere.
inline double sphere_dl_eigenvalue(int n) { return -0.5 / (2.0 * n + 1.0); }

struct ProblemSpec {
  Surface surface = Surface::unit_sphere();
  KernelPair kernels{std::make_shared<LaplaceDoubleLayer>(), Completion::ones,
                     1.0};
  ExactField phi = exact_field("y1");
  ForcingMode forcing = ForcingMode::automatic;
  OracleConfig oracle;
};

ProblemSpec problem_spec(const RunConfig& config);

/// True when f = c phi - A phi has a closed form for this problem.
bool analytic_forcing_available(const ProblemSpec& problem);

/// f = c phi - (G phi) - (H phi). Closed form on the unit sphere for the
/// double layer and harmonic phi; otherwise oracle values, memoized per
/// point so that repeated node evaluations are free.
ScalarField manufacture(const ProblemSpec& problem);

struct ConvergenceOptions {
  int p = 0;
  int q = 2;
  LevelRange levels;
  std::uint64_t seed = 20240917;
  int eval_points = 200;
  SolverPath path = SolverPath::general;
  PouOptions pou;
  MomentOptions moments;
  /// Record levels whose moment system or PoU audit fails instead of
  /// aborting the study.
  bool skip_infeasible = false;
  /// p = 0: solve with both paths and record the max nodal difference.
  bool compare_fast_path = false;
  /// Refuse levels whose dense matrices would exceed this.
  double max_matrix_bytes = 4.0e9;
};

ConvergenceOptions convergence_options(const RunConfig& config);

struct LevelResult {
  int level = 0;
  long n = 0;
  double h = 0.0;
  bool feasible = true;
  std::string note;
  double nodal_error = 0.0;   ///< max over nodes
  double interp_error = 0.0;  ///< max over the random points
  double eoc_nodal = 0.0;     ///< NaN on the first feasible level
  double eoc_interp = 0.0;
  double path_difference = 0.0;  ///< NaN unless compare_fast_path
  double max_abs_R = 0.0;
  double residual = 0.0;
  double seconds = 0.0;
};

struct ConvergenceReport {
  ConvergenceOptions options;
  std::vector<std::pair<std::string, std::string>> echo;
  std::vector<LevelResult> levels;

  std::vector<const LevelResult*> feasible() const;
  /// EOC of the nodal max error between the last two feasible levels.
  double terminal_eoc() const;
  /// Least-squares slope of log(error) against log(h) over feasible levels.
  double fitted_rate() const;

  /// Deterministic for a fixed configuration and seed (no timings).
  std::string csv() const;
  /// Human-readable table including timings and the configuration echo.
  std::string table() const;
};

/// Observed order between two refinements with measured h.
double eoc(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Solves the problem at each level and records errors. Stage errors are
/// rethrown as LevelError carrying the level.
ConvergenceReport run_convergence(const ProblemSpec& problem,
                                  const ConvergenceOptions& options);

/// One discretization, kept together for the CLI and tests.
struct Discretization {
  SurfaceMesh mesh;
  NodeSet nodes;
  std::shared_ptr<const LocalCorrector> corrector;
};

Discretization discretize(const Surface& surface, const KernelPair& kernels,
                          int level, int q, int p, const PouOptions& pou = {},
                          const MomentOptions& moments = {});

/// Solves one level on the chosen path.
NystromSolution solve_level(const Discretization& disc, const ScalarField& f,
                            SolverPath path);

}  // namespace lcn
