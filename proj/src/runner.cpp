#include "qzd/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "qzd/csv_io.hpp"
#include "qzd/eigensolve.hpp"
#include "qzd/errors.hpp"
#include "qzd/lattice.hpp"
#include "qzd/propagate.hpp"

namespace qzd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, end);
}

const char* status_name(ConfidenceInterval::Status s) {
  switch (s) {
    case ConfidenceInterval::Status::Resolved: return "resolved";
    case ConfidenceInterval::Status::ExceedsHorizon: return "exceeds simulated horizon";
    case ConfidenceInterval::Status::SubResolution: return "below time resolution (reduce dt)";
    case ConfidenceInterval::Status::NotEvolved: return "not evolved";
  }
  return "";
}

}  // namespace

RunReport simulate(const SimConfig& config, Pipeline pipeline) {
  with_context("config", [&] { config.validate(); });

  RunReport report;
  report.config = config;
  report.pipeline = pipeline;
  const PhysicalParams& phys = config.physical;
  const SpatialGrid grid = make_grid(config.d, config.n);
  const EmbeddingLayout layout = make_embedding(grid, config.confinement_ratio);

  for (double y : config.confidence_levels) {
    report.intervals.push_back({y, ConfidenceInterval::Status::NotEvolved, 0.0});
    for (int count : config.measurement_counts) {
      report.survival.push_back({y, count, confidence_survival(y, count)});
    }
  }

  auto start = Clock::now();
  with_context("eigensolve", [&] {
    const SparseOperator h = build_hamiltonian(grid, phys);
    const EigenSolution eig =
        lowest_eigenpairs(h, config.selected_eigenstate + 1,
                          {config.eigen_tol, config.eigen_max_iters, config.seed});
    const auto sel = static_cast<std::size_t>(config.selected_eigenstate);
    report.eigenvalue = eig.values[sel];
    report.eigen_residual = eig.residuals[sel];
    report.initial_state = eig.states[sel];
  });
  report.timings.eigensolve = seconds_since(start);
  if (pipeline == Pipeline::Eigenstate) return report;

  start = Clock::now();
  WaveField psi0;
  SparseOperator h_ext;
  with_context("assemble", [&] {
    psi0 = embed(report.initial_state.cast<Complex>(), layout);
    h_ext = build_hamiltonian(layout.outer, phys);
  });
  report.timings.assemble = seconds_since(start);

  start = Clock::now();
  with_context("zeno", [&] {
    report.zeno = zeno_time(psi0, h_ext, phys);
    report.zeno.d = config.d;
    report.zeno.n = config.n;
    report.zeno.ratio = config.confinement_ratio;
    report.tau_z_projected = projected_zeno_time(psi0, h_ext, layout, phys.hbar);
  });
  report.timings.observe = seconds_since(start);
  if (pipeline == Pipeline::Zeno) return report;

  if (config.dt * std::abs(report.eigenvalue) / phys.hbar > 0.1) {
    report.warnings.push_back("dt * E0 / hbar = " +
                              shortest(config.dt * std::abs(report.eigenvalue) / phys.hbar) +
                              " > 0.1: Crank-Nicolson phase error is large at this step size");
  }
  const double horizon = config.dt * config.num_time_steps;
  const double speed = std::sqrt(2.0 * std::abs(report.eigenvalue) / std::min(phys.m1, phys.m2));
  const double padding = layout.offset * grid.spacing();
  if (speed * horizon > padding) {
    report.warnings.push_back(
        "simulated horizon " + shortest(horizon) + " s lets a wavefront at " + shortest(speed) +
        " m/s cross the " + shortest(padding) +
        " m padding; late leakage values may include probability reflected by the outer wall");
  }

  start = Clock::now();
  LeakageSeries& series = report.leakage;
  series.d = config.d;
  series.n = config.n;
  series.ratio = config.confinement_ratio;
  series.dt = config.dt;
  with_context("evolve", [&] {
    const Stepper stepper = make_stepper(
        h_ext, {config.dt, config.num_time_steps, config.solver_tolerance, config.solver_mode,
                phys.hbar});
    const double e0 = report.zeno.mean_energy;
    stepper.evolve(psi0, config.num_time_steps, [&](int k, double t, const WaveField& psi) {
      report.max_norm_drift = std::max(report.max_norm_drift, std::abs(psi.norm() - 1.0));
      const double e = psi.dot(h_ext.apply(psi)).real() / psi.squaredNorm();
      report.max_energy_drift = std::max(report.max_energy_drift, std::abs(e - e0) / std::abs(e0));
      if (k % config.leakage_stride == 0) {
        series.times.push_back(t);
        series.values.push_back(leakage(psi, layout));
      }
    });
  });
  report.timings.evolve = seconds_since(start);

  if (!series.values.empty()) {
    for (auto& entry : report.intervals) {
      try {
        const IntervalEstimate est = calibrate_interval(series, entry.level);
        entry.status = est.status == IntervalEstimate::Status::Resolved
                           ? ConfidenceInterval::Status::Resolved
                           : ConfidenceInterval::Status::ExceedsHorizon;
        entry.time = est.time;
      } catch (const ResolutionError&) {
        entry.status = ConfidenceInterval::Status::SubResolution;
      }
    }
  }
  return report;
}

std::string format_report(const RunReport& r) {
  const SimConfig& c = r.config;
  std::ostringstream out;
  out << "two-particle confinement run\n";
  out << "  d = " << format_number(c.d) << " m, N = " << c.n
      << ", confinement_ratio = " << c.confinement_ratio
      << ", selected_eigenstate = " << c.selected_eigenstate << "\n";
  out << "  dt = " << format_number(c.dt) << " s, num_time_steps = " << c.num_time_steps
      << ", leakage_stride = " << c.leakage_stride << "\n\n";

  out << "eigensolve\n";
  out << "  E = " << format_number(r.eigenvalue) << " J (relative residual "
      << format_number(r.eigen_residual) << ")\n\n";

  if (r.pipeline != Pipeline::Eigenstate) {
    out << "zeno time (extended-grid Hamiltonian)\n";
    out << "  <H>      = " << format_number(r.zeno.mean_energy) << " J\n";
    out << "  <H^2>    = " << format_number(r.zeno.second_moment) << " J^2\n";
    out << "  variance = " << format_number(r.zeno.variance) << " J^2"
        << (r.zeno.variance_clamped ? " (clamped from a small negative value)" : "") << "\n";
    out << "  tau_z    = "
        << (r.zeno.tau_z ? format_number(*r.zeno.tau_z) + " s" : std::string("unbounded")) << "\n";
    out << "  tau_z from outward flux only = "
        << (r.tau_z_projected ? format_number(*r.tau_z_projected) + " s"
                              : std::string("unbounded"))
        << "\n\n";
  }

  if (r.pipeline == Pipeline::Full) {
    out << "evolution\n";
    out << "  max norm drift   = " << format_number(r.max_norm_drift) << "\n";
    out << "  max energy drift = " << format_number(r.max_energy_drift) << " (relative)\n";
    if (!r.leakage.values.empty()) {
      out << "  final leakage    = " << format_number(r.leakage.values.back()) << " at t = "
          << format_number(r.leakage.times.back()) << " s\n";
    }
    out << "\nmeasurement interval tau_Y (leakage reaches 1 - Y)\n";
    for (const auto& entry : r.intervals) {
      out << "  Y = " << shortest(entry.level) << ": ";
      if (entry.status == ConfidenceInterval::Status::Resolved) {
        out << format_number(entry.time) << " s\n";
      } else if (entry.status == ConfidenceInterval::Status::ExceedsHorizon) {
        out << "> " << format_number(entry.time) << " s (" << status_name(entry.status) << ")\n";
      } else {
        out << status_name(entry.status) << "\n";
      }
    }
    out << "\n";
  }

  out << "confidence table P = Y^n\n";
  for (const auto& s : r.survival) {
    out << "  Y = " << shortest(s.level) << ", n = " << s.measurements
        << ": P = " << format_number(s.probability) << "\n";
  }
  for (const auto& s : r.survival) {
    if (std::abs(s.level - 0.999) < 1e-12 && s.measurements == 100) {
      out << "  note: 0.999^100 = " << format_number(s.probability)
          << "; a survival of ~82% sometimes quoted for this case does not follow from P = Y^n\n";
    }
  }

  if (!r.warnings.empty()) {
    out << "\nwarnings\n";
    for (const auto& w : r.warnings) out << "  " << w << "\n";
  }

  out << "\ntimings (s)\n";
  out << "  eigensolve " << shortest(r.timings.eigensolve) << ", assemble "
      << shortest(r.timings.assemble) << ", evolve " << shortest(r.timings.evolve)
      << ", observe " << shortest(r.timings.observe) << "\n";
  return out.str();
}

void write_artifacts(const RunReport& report) {
  const auto& dir = report.config.output_dir;
  const SpatialGrid grid = make_grid(report.config.d, report.config.n);
  export_wavefunction_csv(report.initial_state.cwiseAbs2(), grid, dir / "wavefunction.csv");
  if (report.pipeline != Pipeline::Eigenstate) {
    export_zeno_csv({{report.config.d, report.zeno}}, dir / "zeno.csv");
  }
  if (report.pipeline == Pipeline::Full) {
    export_leakage_csv(report.leakage, dir / "leakage.csv");
  }
  write_text_file(dir / "report.txt", format_report(report));
}

RunReport run(const SimConfig& config, Pipeline pipeline) {
  RunReport report = simulate(config, pipeline);
  with_context("write", [&] { write_artifacts(report); });
  return report;
}

std::string format_sweep_table(const std::vector<RunReport>& reports) {
  std::string text = "d_m,N,dt_s,tau_z_s";
  if (!reports.empty()) {
    for (double y : reports.front().config.confidence_levels) text += ",tau_Y_" + shortest(y);
  }
  text += '\n';
  for (const auto& r : reports) {
    text += format_number(r.config.d) + "," + std::to_string(r.config.n) + "," +
            format_number(r.config.dt) + "," + format_number(r.zeno.tau_z.value_or(INFINITY));
    for (const auto& entry : r.intervals) {
      text += ',';
      switch (entry.status) {
        case ConfidenceInterval::Status::Resolved: text += format_number(entry.time); break;
        case ConfidenceInterval::Status::ExceedsHorizon: text += "inf"; break;
        default: text += "nan"; break;
      }
    }
    text += '\n';
  }
  return text;
}

SweepResult sweep(const SimConfig& base, const SweepPlan& plan) {
  const std::size_t count = plan.d_values.size();
  if (count == 0) throw ConfigError("sweep needs at least one d value");
  auto check = [&](std::size_t size, const char* name) {
    if (size != 0 && size != count) {
      throw ConfigError(std::string(name) + " must be empty or have one entry per d value");
    }
  };
  check(plan.n_values.size(), "N values");
  check(plan.dt_values.size(), "dt values");
  check(plan.step_values.size(), "step values");
  check(plan.ratio_values.size(), "ratio values");

  std::vector<SimConfig> configs(count, base);
  for (std::size_t i = 0; i < count; ++i) {
    configs[i].d = plan.d_values[i];
    if (!plan.n_values.empty()) configs[i].n = plan.n_values[i];
    if (!plan.dt_values.empty()) configs[i].dt = plan.dt_values[i];
    if (!plan.step_values.empty()) configs[i].num_time_steps = plan.step_values[i];
    if (!plan.ratio_values.empty()) configs[i].confinement_ratio = plan.ratio_values[i];
    configs[i].output_dir = base.output_dir / ("d_" + std::to_string(i));
  }

  std::vector<RunReport> reports(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !abort; i = next++) {
      try {
        reports[i] = plan.write ? run(configs[i], plan.pipeline)
                                : simulate(configs[i], plan.pipeline);
      } catch (...) {
        errors[i] = std::current_exception();
        abort = true;
      }
    }
  };
  const int jobs = std::clamp(plan.jobs, 1, static_cast<int>(count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) {
      with_context("sweep run at d = " + shortest(plan.d_values[i]),
                   [&] { std::rethrow_exception(errors[i]); });
    }
  }

  if (plan.write) {
    with_context("write", [&] {
      write_text_file(base.output_dir / "sweep.csv", format_sweep_table(reports));
      if (plan.pipeline != Pipeline::Eigenstate) {
        std::vector<ZenoRow> rows;
        for (const auto& r : reports) rows.push_back({r.config.d, r.zeno});
        export_zeno_csv(rows, base.output_dir / "zeno.csv");
      }
    });
  }
  return {std::move(reports)};
}

std::string gnuplot_script() {
  return "# gnuplot -p plot.gp\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set multiplot layout 1,2\n"
         "set title 'leakage probability'\n"
         "set xlabel 't (s)'\n"
         "set ylabel 'L(t)'\n"
         "plot 'leakage.csv' using 1:2 with linespoints\n"
         "set title 'confined eigenstate density'\n"
         "set xlabel 'x_1 (m)'\n"
         "set ylabel 'x_2 (m)'\n"
         "set view map\n"
         "splot 'wavefunction.csv' using 1:2:3 with points palette pointtype 5\n"
         "unset multiplot\n";
}

}  // namespace qzd
