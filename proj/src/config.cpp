#include "lcn/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lcn/csv.hpp"

namespace lcn {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("bad value for " + key + ": '" + text + "'");
  return value;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config config;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    // Byte order mark on the first line.
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where =
        (origin.empty() ? "line " : origin + ":") + std::to_string(number);
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (config.has(key)) throw ConfigError(where + ": duplicate key " + key);
    config.values_[key] = value;
  }
  return config;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string Config::get(const std::string& key,
                        const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? parse_number<double>(key, values_.at(key)) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? parse_number<int>(key, values_.at(key)) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key,
                              std::uint64_t fallback) const {
  return has(key) ? parse_number<std::uint64_t>(key, values_.at(key))
                  : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

void Config::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_)
    if (!known.count(key)) throw ConfigError("unknown config key " + key);
}

LevelRange parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  LevelRange r;
  if (dots == std::string::npos) {
    r.first = r.last = parse_number<int>("levels", trim(text));
  } else {
    r.first = parse_number<int>("levels", trim(text.substr(0, dots)));
    r.last = parse_number<int>("levels", trim(text.substr(dots + 2)));
  }
  if (r.first < 0 || r.last < r.first)
    throw ConfigError("levels must be ascending and nonnegative: " + text);
  return r;
}

SolverPath parse_solver_path(const std::string& name) {
  if (name == "general") return SolverPath::general;
  if (name == "p0_fast") return SolverPath::p0_fast;
  throw ConfigError("unknown solver.path '" + name + "'");
}

std::string to_string(SolverPath path) {
  return path == SolverPath::general ? "general" : "p0_fast";
}

ForcingMode parse_forcing(const std::string& name) {
  if (name == "auto") return ForcingMode::automatic;
  if (name == "analytic") return ForcingMode::analytic;
  if (name == "oracle") return ForcingMode::oracle;
  throw ConfigError("unknown problem.forcing '" + name + "'");
}

std::string to_string(ForcingMode mode) {
  switch (mode) {
    case ForcingMode::automatic: return "auto";
    case ForcingMode::analytic: return "analytic";
    case ForcingMode::oracle: return "oracle";
  }
  return "?";
}

namespace {

Ramp parse_ramp(const std::string& name) {
  if (name == "quadratic") return Ramp::quadratic;
  if (name == "quintic") return Ramp::quintic;
  throw ConfigError("unknown pou.ramp '" + name + "'");
}

Vec3 parse_axes(const std::string& text) {
  Vec3 axes;
  std::istringstream in(text);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 3) throw ConfigError("surface.axes needs three values");
    axes(i++) = parse_number<double>("surface.axes", trim(part));
  }
  if (i != 3) throw ConfigError("surface.axes needs three values");
  return axes;
}

}  // namespace

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "surface.kind",      "surface.axes",         "surface.eps",
      "surface.lyapunov_radius",
      "mesh.level",        "quad.q",               "correction.p",
      "kernel.type",       "kernel.completion",    "equation.c",
      "pou.theta",         "pou.kappa_scale",      "pou.ramp",
      "moments.accuracy",  "moments.analytic_dl",  "moments.angles",
      "moments.radial",    "moments.max_refinements",
      "moments.radial_grading",
      "oracle.cap_fraction", "oracle.panels",      "oracle.q",
      "oracle.radial_panels", "oracle.outer_level", "oracle.tol",
      "solver.path",       "problem.phi",          "problem.forcing",
      "run.levels",        "run.seed",             "run.eval_points",
      "run.skip_infeasible", "run.compare_fast_path",
  };
  return keys;
}

RunConfig run_config(const Config& config) {
  config.require_known(known_keys());
  RunConfig r;
  r.surface_kind = config.get("surface.kind", r.surface_kind);
  if (config.has("surface.axes")) r.axes = parse_axes(config.get("surface.axes", ""));
  r.eps = config.get_double("surface.eps", r.eps);
  if (config.has("surface.lyapunov_radius"))
    r.lyapunov_radius = config.get_double("surface.lyapunov_radius", 0.0);

  r.level = config.get_int("mesh.level", r.level);
  r.q = config.get_int("quad.q", r.q);
  r.p = config.get_int("correction.p", r.p);
  if (r.q < 1) throw ConfigError("quad.q must be >= 1");
  if (r.p < 0 || r.p > 4) throw ConfigError("correction.p must lie in 0..4");

  r.kernel = config.get("kernel.type", r.kernel);
  r.completion = parse_completion(config.get("kernel.completion", "ones"));
  r.c = config.get_double("equation.c", r.c);

  r.pou.theta = config.get_double("pou.theta", r.pou.theta);
  r.pou.kappa_scale = config.get_double("pou.kappa_scale", r.pou.kappa_scale);
  if (config.has("pou.ramp")) r.pou.ramp = parse_ramp(config.get("pou.ramp", ""));

  MomentOptions& m = r.moments;
  m.accuracy = config.get_double("moments.accuracy", m.accuracy);
  m.analytic_dl = config.get_bool("moments.analytic_dl", m.analytic_dl);
  m.angles = config.get_int("moments.angles", m.angles);
  m.radial = config.get_int("moments.radial", m.radial);
  m.max_refinements = config.get_int("moments.max_refinements", m.max_refinements);
  m.radial_grading = config.get_int("moments.radial_grading", m.radial_grading);
  if (!(m.accuracy > 0.0)) throw ConfigError("moments.accuracy must be positive");

  OracleConfig& o = r.oracle;
  o.cap_fraction = config.get_double("oracle.cap_fraction", o.cap_fraction);
  o.panels = config.get_int("oracle.panels", o.panels);
  o.q = config.get_int("oracle.q", o.q);
  o.radial_panels = config.get_int("oracle.radial_panels", o.radial_panels);
  o.outer_level = config.get_int("oracle.outer_level", o.outer_level);
  o.tol = config.get_double("oracle.tol", o.tol);

  r.path = parse_solver_path(config.get("solver.path", to_string(r.path)));
  r.phi = config.get("problem.phi", r.phi);
  r.forcing = parse_forcing(config.get("problem.forcing", to_string(r.forcing)));

  if (config.has("run.levels")) r.levels = parse_levels(config.get("run.levels", ""));
  r.seed = config.get_u64("run.seed", r.seed);
  r.eval_points = config.get_int("run.eval_points", r.eval_points);
  r.skip_infeasible = config.get_bool("run.skip_infeasible", r.skip_infeasible);
  r.compare_fast_path =
      config.get_bool("run.compare_fast_path", r.compare_fast_path);

  // Fail early on bad surface or kernel settings.
  r.surface();
  r.kernels();
  return r;
}

Surface RunConfig::surface() const {
  if (surface_kind == "sphere") return Surface::unit_sphere(lyapunov_radius);
  if (surface_kind == "ellipsoid")
    return Surface::ellipsoid(axes(0), axes(1), axes(2), lyapunov_radius);
  if (surface_kind == "perturbed_sphere")
    return Surface::perturbed_sphere(eps, lyapunov_radius);
  throw ConfigError("unknown surface.kind '" + surface_kind + "'");
}

KernelPair RunConfig::kernels() const {
  return KernelPair(make_kernel(kernel), completion, c);
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  const auto num = [](double v) { return format_double(v); };
  out.emplace_back("surface.kind", surface_kind);
  if (surface_kind == "ellipsoid")
    out.emplace_back("surface.axes",
                     num(axes(0)) + "," + num(axes(1)) + "," + num(axes(2)));
  if (surface_kind == "perturbed_sphere") out.emplace_back("surface.eps", num(eps));
  out.emplace_back("surface.lyapunov_radius", num(surface().lyapunov_radius()));
  out.emplace_back("quad.q", std::to_string(q));
  out.emplace_back("correction.p", std::to_string(p));
  out.emplace_back("kernel.type", kernel);
  out.emplace_back("kernel.completion", to_string(completion));
  out.emplace_back("equation.c", num(c));
  out.emplace_back("pou.theta", num(pou.theta));
  out.emplace_back("pou.kappa_scale", num(pou.kappa_scale));
  out.emplace_back("pou.ramp", pou.ramp == Ramp::quadratic ? "quadratic" : "quintic");
  out.emplace_back("moments.accuracy", num(moments.accuracy));
  out.emplace_back("moments.analytic_dl", moments.analytic_dl ? "true" : "false");
  out.emplace_back("solver.path", to_string(path));
  out.emplace_back("problem.phi", phi);
  out.emplace_back("problem.forcing", to_string(forcing));
  out.emplace_back("run.levels",
                   std::to_string(levels.first) + ".." + std::to_string(levels.last));
  out.emplace_back("run.seed", std::to_string(seed));
  out.emplace_back("run.eval_points", std::to_string(eval_points));
  return out;
}

}  // namespace lcn
