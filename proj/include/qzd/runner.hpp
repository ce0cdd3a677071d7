#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qzd/config.hpp"
#include "qzd/observe.hpp"

namespace qzd {

/// How far through the pipeline a run goes.
enum class Pipeline {
  Eigenstate,  // eigensolve only
  Zeno,        // eigensolve, embed, extended Hamiltonian, Zeno time
  Full,        // everything, including Crank-Nicolson evolution and leakage
};

struct ConfidenceInterval {
  enum class Status { Resolved, ExceedsHorizon, SubResolution, NotEvolved };
  double level = 0.0;
  Status status = Status::NotEvolved;
  double time = 0.0;  // tau_Y, or the horizon when ExceedsHorizon
};

struct SurvivalEntry {
  double level;
  int measurements;
  double probability;  // level^measurements
};

struct StageTimings {
  double eigensolve = 0.0;  // seconds
  double assemble = 0.0;
  double evolve = 0.0;
  double observe = 0.0;
};

struct RunReport {
  SimConfig config;
  Pipeline pipeline = Pipeline::Full;
  double eigenvalue = 0.0;       // J, energy of the selected confined eigenstate
  double eigen_residual = 0.0;
  RealField initial_state;       // selected eigenstate on the confinement grid
  ZenoReport zeno;
  std::optional<double> tau_z_projected;
  LeakageSeries leakage;
  double max_norm_drift = 0.0;    // max_k | ||psi_k|| - 1 |
  double max_energy_drift = 0.0;  // max_k |<H>_k - <H>_0| / |<H>_0|
  std::vector<ConfidenceInterval> intervals;
  std::vector<SurvivalEntry> survival;
  StageTimings timings;
  std::vector<std::string> warnings;
};

/// Runs the pipeline in memory. Errors are rethrown tagged with the stage name.
RunReport simulate(const SimConfig& config, Pipeline pipeline = Pipeline::Full);

/// simulate() followed by write_artifacts() into config.output_dir.
RunReport run(const SimConfig& config, Pipeline pipeline = Pipeline::Full);

/// wavefunction.csv always; zeno.csv from the Zeno stage on; leakage.csv for
/// full runs; report.txt always.
void write_artifacts(const RunReport& report);

/// Human-readable summary, including the confidence table.
std::string format_report(const RunReport& report);

struct SweepPlan {
  std::vector<double> d_values;
  std::vector<int> n_values;      // empty or one per d
  std::vector<double> dt_values;  // empty or one per d
  std::vector<int> step_values;   // empty or one per d
  std::vector<int> ratio_values;  // empty or one per d
  Pipeline pipeline = Pipeline::Full;
  int jobs = 1;
  bool write = true;
};

struct SweepResult {
  std::vector<RunReport> reports;  // in d_values order
};

/// Runs one independent pipeline per d (each into output_dir/d_<index>), then
/// writes the aggregate sweep.csv and zeno.csv into output_dir. A failing run
/// aborts the sweep with the offending d in the error message; artifacts of
/// runs that already completed are kept.
SweepResult sweep(const SimConfig& base, const SweepPlan& plan);

/// d_m,N,dt_s,tau_z_s,tau_Y_<level>... with one row per report.
std::string format_sweep_table(const std::vector<RunReport>& reports);

/// gnuplot script plotting leakage.csv and wavefunction.csv from `dir`.
std::string gnuplot_script();

}  // namespace qzd
