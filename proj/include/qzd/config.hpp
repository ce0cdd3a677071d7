#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qzd/operators.hpp"
#include "qzd/propagate.hpp"

namespace qzd {

inline constexpr int kMaxSelectedEigenstate = 10;

/// Full simulation configuration. Every field has a default reproducing the
/// reference two-proton run (d = 1e-12 m, N = 100, doubled extended region,
/// ground state, dt = 1e-20 s, 10 steps).
struct SimConfig {
  PhysicalParams physical;
  double d = 1.00e-12;
  int n = 100;
  int confinement_ratio = 2;
  int selected_eigenstate = 0;
  double dt = 1e-20;
  int num_time_steps = 10;
  int leakage_stride = 1;
  std::vector<double> confidence_levels{0.95, 0.999};
  std::vector<int> measurement_counts{100};
  std::filesystem::path output_dir = "qzd_out";
  std::uint64_t seed = 20240601;
  SolverMode solver_mode = SolverMode::Direct;
  double solver_tolerance = 1e-13;
  double eigen_tol = 1e-10;
  int eigen_max_iters = 10000;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Keys accepted by load_config and the CLI, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one field from its textual value. Throws ConfigError for unknown keys
/// ("unknown key <key>") and unparsable values.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines (`#` starts a comment) over the defaults.
/// Throws IoError when the file cannot be read and ConfigError with the line
/// number for parse failures, unknown keys or invalid values.
SimConfig load_config(const std::filesystem::path& path);

/// Same as load_config but reads from an in-memory string.
SimConfig parse_config(std::string_view text, SimConfig base = {});

/// Named parameter set for one of the reference figures.
struct Preset {
  std::string name;
  std::string description;
  double d;
  int n;
  double dt;
  int steps;
  int ratio = 2;  // odd N needs an odd ratio for a centred embedding
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(std::string_view name);

/// Overwrites d, N, dt, num_time_steps and confinement_ratio from the preset.
void apply_preset(SimConfig& config, const Preset& preset);

}  // namespace qzd
