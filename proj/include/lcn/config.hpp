#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcn/correction.hpp"
#include "lcn/oracle.hpp"
#include "lcn/pou.hpp"

namespace lcn {

/// Flat `key = value` file. `#` starts a comment; blank lines are skipped.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text, const std::string& origin = "");
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Throws ConfigError on the first key outside `known`.
  void require_known(const std::set<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Inclusive level range, written `a..b` (or a single level).
struct LevelRange {
  int first = 1;
  int last = 3;
};
LevelRange parse_levels(const std::string& text);

enum class SolverPath { general, p0_fast };
SolverPath parse_solver_path(const std::string& name);
std::string to_string(SolverPath path);

enum class ForcingMode { automatic, analytic, oracle };
ForcingMode parse_forcing(const std::string& name);
std::string to_string(ForcingMode mode);

/// Everything a CLI run needs, with defaults for every key.
struct RunConfig {
  std::string surface_kind = "sphere";
  Vec3 axes = Vec3(1.5, 1.0, 0.8);  // ellipsoid only
  double eps = 0.1;                  // perturbed sphere only
  std::optional<double> lyapunov_radius;

  int level = 2;
  int q = 2;
  int p = 0;

  std::string kernel = "laplace_dl";
  Completion completion = Completion::ones;
  double c = 1.0;

  PouOptions pou;
  MomentOptions moments;
  OracleConfig oracle;

  SolverPath path = SolverPath::general;
  std::string phi = "y1";
  ForcingMode forcing = ForcingMode::automatic;

  LevelRange levels;
  std::uint64_t seed = 20240917;
  int eval_points = 200;
  bool skip_infeasible = false;
  bool compare_fast_path = false;

  Surface surface() const;
  KernelPair kernels() const;
  /// key = value lines that reproduce this configuration.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

RunConfig run_config(const Config& config);

/// Keys understood by run_config.
const std::set<std::string>& known_keys();

}  // namespace lcn
