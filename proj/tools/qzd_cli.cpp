// qzd: confined two-particle eigenstates, Crank-Nicolson leakage and Zeno times.
//
//   qzd eigenstate [--config FILE] [--<key> VALUE ...]
//   qzd evolve     [--config FILE] [--<key> VALUE ...] [--gnuplot]
//   qzd zeno       [--config FILE] [--<key> VALUE ...]
//   qzd sweep      --d-values A,B,.. [--N-values ..] [--dt-values ..] [--steps-values ..]
//   qzd preset     NAME   (fig1..fig3, fig4a..fig4f, fig6)
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure, 3 IO error.

#include <charconv>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qzd/config.hpp"
#include "qzd/csv_io.hpp"
#include "qzd/errors.hpp"
#include "qzd/runner.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::map<std::string, std::string> settings;
  bool gnuplot = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file");
  for (const auto& key : qzd::config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&opts, key](const std::string& v) { opts.settings[key] = v; },
        "override config key " + key);
  }
  cmd->add_flag("--gnuplot", opts.gnuplot, "also write plot.gp next to the CSV files");
}

qzd::SimConfig build_config(const CommonOptions& opts, const qzd::Preset* preset = nullptr) {
  qzd::SimConfig config =
      opts.config_path.empty() ? qzd::SimConfig{} : qzd::load_config(opts.config_path);
  if (preset != nullptr) qzd::apply_preset(config, *preset);
  for (const auto& [key, value] : opts.settings) {
    qzd::with_context("--" + key, [&] { qzd::apply_setting(config, key, value); });
  }
  qzd::with_context("config", [&] { config.validate(); });
  return config;
}

template <class T>
std::vector<T> parse_csv_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
    T value{};
    const char* end = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), end, value);
    if (item.empty() || ec != std::errc{} || ptr != end) {
      throw qzd::ConfigError(flag + ": cannot parse '" + item + "'");
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_warnings(const qzd::RunReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
}

void finish(const qzd::RunReport& report, const CommonOptions& opts) {
  print_warnings(report);
  if (opts.gnuplot) {
    qzd::write_text_file(report.config.output_dir / "plot.gp", qzd::gnuplot_script());
  }
  std::cout << qzd::format_report(report);
  std::cout << "artifacts written to " << report.config.output_dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-particle quantum Zeno confinement simulator"};
  app.require_subcommand(1);

  CommonOptions eig_opts, evo_opts, zeno_opts, sweep_opts, preset_opts;
  auto* eig_cmd = app.add_subcommand("eigenstate", "solve the confined eigenproblem, write wavefunction.csv");
  add_common(eig_cmd, eig_opts);
  auto* evo_cmd = app.add_subcommand("evolve", "full pipeline, write leakage.csv");
  add_common(evo_cmd, evo_opts);
  auto* zeno_cmd = app.add_subcommand("zeno", "Zeno time of the embedded eigenstate only");
  add_common(zeno_cmd, zeno_opts);

  auto* sweep_cmd = app.add_subcommand("sweep", "independent runs over several confinement sizes");
  add_common(sweep_cmd, sweep_opts);
  std::string d_values, n_values, dt_values, step_values;
  int jobs = 1;
  bool zeno_only = false;
  sweep_cmd->add_option("--d-values", d_values, "comma-separated confinement sizes (m)")->required();
  sweep_cmd->add_option("--N-values", n_values, "per-d subdivision counts");
  sweep_cmd->add_option("--dt-values", dt_values, "per-d time steps (s)");
  sweep_cmd->add_option("--steps-values", step_values, "per-d step counts");
  sweep_cmd->add_option("--jobs", jobs, "runs executed in parallel")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--zeno-only", zeno_only, "skip the time evolution");

  auto* preset_cmd = app.add_subcommand("preset", "run a named reference configuration");
  add_common(preset_cmd, preset_opts);
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "fig1, fig2, fig3, fig4a..fig4f or fig6")->required();
  preset_cmd->add_option("--jobs", jobs, "parallel runs for fig6")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eig_cmd) {
      finish(qzd::run(build_config(eig_opts), qzd::Pipeline::Eigenstate), eig_opts);
    } else if (*evo_cmd) {
      finish(qzd::run(build_config(evo_opts), qzd::Pipeline::Full), evo_opts);
    } else if (*zeno_cmd) {
      finish(qzd::run(build_config(zeno_opts), qzd::Pipeline::Zeno), zeno_opts);
    } else if (*sweep_cmd) {
      const qzd::SimConfig base = build_config(sweep_opts);
      qzd::SweepPlan plan;
      plan.d_values = parse_csv_list<double>(d_values, "--d-values");
      plan.n_values = parse_csv_list<int>(n_values, "--N-values");
      plan.dt_values = parse_csv_list<double>(dt_values, "--dt-values");
      plan.step_values = parse_csv_list<int>(step_values, "--steps-values");
      plan.pipeline = zeno_only ? qzd::Pipeline::Zeno : qzd::Pipeline::Full;
      plan.jobs = jobs;
      const auto result = qzd::sweep(base, plan);
      for (const auto& r : result.reports) print_warnings(r);
      std::cout << qzd::format_sweep_table(result.reports);
      std::cout << "artifacts written to " << base.output_dir.string() << "\n";
    } else if (*preset_cmd) {
      if (preset_name == "fig6") {
        qzd::SimConfig base = build_config(preset_opts);
        qzd::SweepPlan plan;
        for (const auto& p : qzd::presets()) {
          if (p.name.rfind("fig4", 0) != 0) continue;
          plan.d_values.push_back(p.d);
          plan.n_values.push_back(p.n);
          plan.dt_values.push_back(p.dt);
          plan.step_values.push_back(p.steps);
          plan.ratio_values.push_back(p.ratio);
        }
        plan.pipeline = qzd::Pipeline::Zeno;
        plan.jobs = jobs;
        const auto result = qzd::sweep(base, plan);
        std::cout << qzd::format_sweep_table(result.reports);
        std::cout << "artifacts written to " << base.output_dir.string() << "\n";
      } else {
        const auto preset = qzd::find_preset(preset_name);
        if (!preset) throw qzd::ConfigError("unknown preset " + preset_name);
        const auto pipeline =
            preset_name == "fig1" ? qzd::Pipeline::Eigenstate : qzd::Pipeline::Full;
        finish(qzd::run(build_config(preset_opts, &*preset), pipeline), preset_opts);
      }
    }
  } catch (const qzd::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const qzd::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const qzd::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
