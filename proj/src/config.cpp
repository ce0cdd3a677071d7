#include "qzd/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qzd/errors.hpp"
#include "qzd/lattice.hpp"

namespace qzd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError("cannot parse '" + std::string(text) + "' as a number for key " +
                      std::string(key));
  }
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  physical.validate();
  const SpatialGrid grid = make_grid(d, n);
  make_embedding(grid, confinement_ratio);
  if (selected_eigenstate < 0 || selected_eigenstate >= kMaxSelectedEigenstate) {
    throw ConfigError("selected_eigenstate must lie in [0, " +
                      std::to_string(kMaxSelectedEigenstate) + ")");
  }
  PropagatorConfig{dt, num_time_steps, solver_tolerance, solver_mode, physical.hbar}.validate();
  if (leakage_stride < 1) throw ConfigError("leakage_stride must be at least 1");
  if (confidence_levels.empty()) throw ConfigError("confidence_levels must not be empty");
  for (double y : confidence_levels) {
    if (!(y > 0.0 && y < 1.0)) throw ConfigError("confidence_levels entries must lie in (0, 1)");
  }
  for (int count : measurement_counts) {
    if (count < 1) throw ConfigError("measurement_counts entries must be at least 1");
  }
  if (!(eigen_tol > 0.0)) throw ConfigError("eigen_tol must be positive");
  if (eigen_max_iters < 1) throw ConfigError("eigen_max_iters must be at least 1");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "m1", "m2", "q1", "q2", "hbar", "k", "epsilon",
      "d", "N", "confinement_ratio", "selected_eigenstate",
      "dt", "num_time_steps", "leakage_stride",
      "confidence_levels", "measurement_counts",
      "output_dir", "seed",
      "solver_mode", "solver_tolerance", "eigen_tol", "eigen_max_iters"};
  return keys;
}

void apply_setting(SimConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  auto real = [&] { return parse_number<double>(key, value); };
  auto integer = [&] { return parse_number<int>(key, value); };

  if (key == "m1") c.physical.m1 = real();
  else if (key == "m2") c.physical.m2 = real();
  else if (key == "q1") c.physical.q1 = real();
  else if (key == "q2") c.physical.q2 = real();
  else if (key == "hbar") c.physical.hbar = real();
  else if (key == "k") c.physical.k = real();
  else if (key == "epsilon") c.physical.epsilon = real();
  else if (key == "d") c.d = real();
  else if (key == "N") c.n = integer();
  else if (key == "confinement_ratio") c.confinement_ratio = integer();
  else if (key == "selected_eigenstate") c.selected_eigenstate = integer();
  else if (key == "dt") c.dt = real();
  else if (key == "num_time_steps") c.num_time_steps = integer();
  else if (key == "leakage_stride") c.leakage_stride = integer();
  else if (key == "confidence_levels") c.confidence_levels = parse_list<double>(key, value);
  else if (key == "measurement_counts") c.measurement_counts = parse_list<int>(key, value);
  else if (key == "output_dir") {
    if (value.empty()) throw ConfigError("output_dir must not be empty");
    c.output_dir = std::string(value);
  } else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "solver_mode") {
    if (value == "direct") c.solver_mode = SolverMode::Direct;
    else if (value == "iterative") c.solver_mode = SolverMode::Iterative;
    else throw ConfigError("solver_mode must be 'direct' or 'iterative', got '" +
                           std::string(value) + "'");
  } else if (key == "solver_tolerance") c.solver_tolerance = real();
  else if (key == "eigen_tol") c.eigen_tol = real();
  else if (key == "eigen_max_iters") c.eigen_max_iters = integer();
  else throw ConfigError("unknown key " + std::string(key));
}

SimConfig parse_config(std::string_view text, SimConfig base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    with_context("line " + std::to_string(line_no),
                 [&] { apply_setting(base, key, line.substr(eq + 1)); });
  }
  base.validate();
  return base;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return with_context(path.string(), [&] { return parse_config(text.str()); });
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all{
      {"fig1", "ground state, d = 1e-12 m, N = 100", 1e-12, 100, 1e-20, 10},
      {"fig2", "coarse step: d = 1e-12 m, dt = 1e-18 s, 9 steps", 1e-12, 100, 1e-18, 9},
      {"fig3", "fine step: d = 1e-12 m, dt = 1e-21 s, 9 steps", 1e-12, 100, 1e-21, 9},
      {"fig4a", "leakage d10-12 deltaT10-19 N40", 1e-12, 40, 1e-19, 40},
      {"fig4b", "leakage d10-11 deltaT10-18 N65 (ratio 3)", 1e-11, 65, 1e-18, 100, 3},
      {"fig4c", "leakage d10-10 deltaT10-16 N65 (ratio 3)", 1e-10, 65, 1e-16, 100, 3},
      {"fig4d", "leakage d10-9 deltaT10-15 N50", 1e-9, 50, 1e-15, 100},
      {"fig4e", "leakage d10-8 deltaT10-14 N100", 1e-8, 100, 1e-14, 200},
      {"fig4f", "leakage d10-7 deltaT10-13 N100", 1e-7, 100, 1e-13, 300},
  };
  return all;
}

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

void apply_preset(SimConfig& config, const Preset& preset) {
  config.d = preset.d;
  config.n = preset.n;
  config.dt = preset.dt;
  config.num_time_steps = preset.steps;
  config.confinement_ratio = preset.ratio;
}

}  // namespace qzd
