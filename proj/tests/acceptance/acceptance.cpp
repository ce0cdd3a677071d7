// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run criteria 1-10
//   acceptance --criterion N   run only criterion N
//   acceptance --slow          long-horizon runs at d = 1e-9 .. 1e-7

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "qzd/csv_io.hpp"
#include "qzd/eigensolve.hpp"
#include "qzd/observe.hpp"
#include "qzd/propagate.hpp"
#include "qzd/runner.hpp"

using namespace qzd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> check;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + QZD_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(QZD_TEST_TMP) / name;
  fs::remove_all(dir);
  return dir;
}

SimConfig preset_config(const std::string& name) {
  SimConfig c;
  apply_preset(c, *find_preset(name));
  return c;
}

// Leakage at the sample whose time is closest to t.
double leakage_at(const LeakageSeries& s, double t) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.times.size(); ++k) {
    if (std::abs(s.times[k] - t) < std::abs(s.times[best] - t)) best = k;
  }
  return s.values[best];
}

// First time the leakage reaches `level`, linearly interpolated; NaN if never.
double time_to_reach(const LeakageSeries& s, double level) {
  const IntervalEstimate e = calibrate_interval(s, 1.0 - level);
  return e.status == IntervalEstimate::Status::Resolved ? e.time : NAN;
}

bool within_factor(double value, double target, double factor) {
  return value >= target / factor && value <= target * factor;
}

Outcome free_oracle() {
  PhysicalParams p;
  p.q1 = 0.0;
  p.q2 = 0.0;
  const double e = lowest_eigenpairs(build_hamiltonian(make_grid(1e-12, 8), p), 1).values[0];
  const double expected = oracle::free_ground_energy(1e-12, 8, p);
  const double rel = std::abs(e - expected) / expected;
  return {rel <= 1e-10, "E0 = " + num(e) + " J, closed form " + num(expected) + " J, rel err " + num(rel)};
}

Outcome dense_oracle() {
  const PhysicalParams p;
  double worst = 0.0;
  for (int n = 3; n <= 10; ++n) {
    for (double d : {1e-12, 1e-10, 1e-8}) {
      const SparseOperator h = build_hamiltonian(make_grid(d, n), p);
      const Eigen::VectorXd dense =
          oracle::dense_eigenvalues(oracle::dense_hamiltonian(d, n, p));
      const int count = std::min(4, static_cast<int>(h.dimension()) - 1);
      const EigenSolution sol = lowest_eigenpairs(h, count);
      for (int c = 0; c < count; ++c) {
        worst = std::max(worst, std::abs(sol.values[static_cast<std::size_t>(c)] - dense[c]) / dense[c]);
      }
    }
  }
  return {worst <= 1e-8, "worst relative eigenvalue error over N = 3..10: " + num(worst)};
}

Outcome ground_structure() {
  const SimConfig c;
  const SpatialGrid g = make_grid(c.d, c.n);
  const EigenSolution sol = lowest_eigenpairs(build_hamiltonian(g, c.physical), 1);
  const RealField rho = sol.states[0].cwiseAbs2();
  const int n = g.interior_per_axis();
  const double peak = rho.maxCoeff();
  double asym = 0.0, diag = 0.0;
  for (int i = 0; i < n; ++i) {
    diag = std::max(diag, rho[i * n + i]);
    for (int j = 0; j < n; ++j) asym = std::max(asym, std::abs(rho[i * n + j] - rho[j * n + i]));
  }
  return {asym <= 1e-8 * peak && diag < 0.05 * peak,
          "exchange asymmetry / max = " + num(asym / peak) + ", diagonal max / max = " + num(diag / peak)};
}

Outcome crank_nicolson() {
  // unitarity on the default extended grid
  const SimConfig c;
  const SpatialGrid inner = make_grid(c.d, c.n);
  const EmbeddingLayout layout = make_embedding(inner, c.confinement_ratio);
  const EigenSolution sol = lowest_eigenpairs(build_hamiltonian(inner, c.physical), 1);
  const WaveField psi0 = embed(sol.states[0].cast<Complex>(), layout);
  PropagatorConfig pc;
  pc.dt = c.dt;
  const Stepper stepper = make_stepper(build_hamiltonian(layout.outer, c.physical), pc);
  double drift = 0.0;
  stepper.evolve(psi0, 100, [&](int, double, const WaveField& psi) {
    drift = std::max(drift, std::abs(psi.norm() - 1.0));
  });

  // order against the exact propagator on a 9 x 9 interior grid
  const PhysicalParams p;
  const SpatialGrid small_inner = make_grid(0.6e-12, 6);
  const SpatialGrid outer = make_grid(1.0e-12, 10);
  const SparseOperator h = build_hamiltonian(outer, p);
  const EigenSolution small = lowest_eigenpairs(build_hamiltonian(small_inner, p), 1);
  WaveField start = WaveField::Zero(static_cast<Eigen::Index>(outer.size()));
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      start[static_cast<Eigen::Index>(outer.index(i + 2, j + 2))] =
          small.states[0][static_cast<Eigen::Index>(small_inner.index(i, j))];
    }
  }
  const Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix());
  const double dt = 0.05 * p.hbar / oracle::dense_eigenvalues(dense).maxCoeff();
  const WaveField exact = oracle::exact_propagator(dense, 10 * dt, p.hbar) * start;
  std::vector<double> errors;
  for (int refine : {1, 2}) {
    PropagatorConfig rc;
    rc.dt = dt / refine;
    errors.push_back((make_stepper(h, rc).evolve(start, 10 * refine) - exact).norm());
  }
  const double ratio = errors[0] / errors[1];
  return {drift < 1e-10 && ratio >= 3.5 && ratio <= 4.5,
          "norm drift over 100 steps = " + num(drift) + ", error ratio on dt/2 = " + num(ratio)};
}

Outcome fig4a() {
  const RunReport r = simulate(preset_config("fig4a"));
  const double l = leakage_at(r.leakage, 2e-18);
  return {l >= 0.9, "leakage at t = 2e-18 s: " + num(l)};
}

Outcome fig4bc() {
  const double t_b = time_to_reach(simulate(preset_config("fig4b")).leakage, 0.9);
  const double t_c = time_to_reach(simulate(preset_config("fig4c")).leakage, 0.9);
  const bool ok = within_factor(t_b, 6e-17, 3.0) && within_factor(t_c, 6e-15, 3.0);
  return {ok, "t(L = 0.9): d = 1e-11 -> " + num(t_b) + " s (target 6e-17), d = 1e-10 -> " +
                  num(t_c) + " s (target 6e-15)"};
}

Outcome fig6_trend() {
  std::vector<double> taus;
  for (const char* name : {"fig4a", "fig4b", "fig4c"}) {
    const RunReport r = simulate(preset_config(name), Pipeline::Zeno);
    taus.push_back(r.zeno.tau_z.value_or(NAN));
  }
  const bool increasing = taus[0] < taus[1] && taus[1] < taus[2];
  const bool magnitude = within_factor(taus[0], 1e-12, 10.0);
  return {increasing && magnitude,
          "tau_z = " + num(taus[0]) + ", " + num(taus[1]) + ", " + num(taus[2]) + " s; increasing: " +
              (increasing ? "yes" : "no") + "; tau_z(1e-12) within 10x of 1e-12 s: " +
              (magnitude ? "yes" : "no")};
}

Outcome confidence() {
  const double low = confidence_survival(0.95, 100);
  const double high = confidence_survival(0.999, 100);
  SimConfig c;
  c.n = 10;
  const std::string report = format_report(simulate(c, Pipeline::Eigenstate));
  const bool flagged = report.find("82%") != std::string::npos;
  return {std::abs(low - 0.00592) <= 1e-5 && std::abs(high - 0.9048) <= 1e-4 && flagged,
          "0.95^100 = " + num(low) + ", 0.999^100 = " + num(high) +
              ", report flags the 82% figure: " + (flagged ? "yes" : "no")};
}

Outcome determinism() {
  const fs::path a = scratch("determinism_a");
  const fs::path b = scratch("determinism_b");
  const int ca = run_cli("evolve --output_dir \"" + a.string() + "\"");
  const int cb = run_cli("evolve --output_dir \"" + b.string() + "\"");
  if (ca != 0 || cb != 0) return {false, "evolve exited with " + std::to_string(ca) + "/" + std::to_string(cb)};
  const bool leak = slurp(a / "leakage.csv") == slurp(b / "leakage.csv");
  const bool wave = slurp(a / "wavefunction.csv") == slurp(b / "wavefunction.csv");
  return {leak && wave && !slurp(a / "leakage.csv").empty(),
          std::string("leakage.csv identical: ") + (leak ? "yes" : "no") +
              ", wavefunction.csv identical: " + (wave ? "yes" : "no")};
}

Outcome header_golden() {
  const fs::path dir = scratch("golden");
  if (run_cli("eigenstate --N 8 --output_dir \"" + dir.string() + "\"") != 0) {
    return {false, "eigenstate run failed"};
  }
  const std::string text = slurp(dir / "wavefunction.csv");
  const std::string first = text.substr(0, text.find('\n'));
  const std::string golden = "Particle 1 Position,Particle 2 Position,Eigenvector Squared";
  return {first == golden, "header: \"" + first + "\""};
}

Outcome slow_panels() {
  std::string detail;
  std::vector<double> taus;
  double tau_1e7 = NAN, ty_1e7 = NAN;
  for (const char* name : {"fig4d", "fig4e", "fig4f"}) {
    SimConfig c = preset_config(name);
    c.confidence_levels = {0.999, 0.1};
    const RunReport r = simulate(c);
    const double tau = r.zeno.tau_z.value_or(NAN);
    const auto& ty = r.intervals.front();
    const double t90 = time_to_reach(r.leakage, 0.9);
    detail += std::string("\n    ") + name + ": d = " + num(c.d) + " m, tau_z = " + num(tau) +
              " s, tau_Y(0.999) = " +
              (ty.status == ConfidenceInterval::Status::Resolved ? num(ty.time) + " s" : "unresolved") +
              ", t(L = 0.9) = " + num(t90) + " s";
    taus.push_back(tau);
    if (c.d == 1e-7) {
      tau_1e7 = tau;
      ty_1e7 = ty.status == ConfidenceInterval::Status::Resolved ? ty.time : NAN;
    }
  }
  const bool increasing = taus[0] < taus[1] && taus[1] < taus[2];
  const bool tau_ok = within_factor(tau_1e7, 5e-7, 10.0);
  const bool ty_ok = within_factor(ty_1e7, 1e-11, 3.0);
  detail += std::string("\n    tau_z increasing: ") + (increasing ? "yes" : "no") +
            "; tau_z(1e-7) within 10x of 5e-7 s: " + (tau_ok ? "yes" : "no") +
            "; tau_Y(0.999) at 1e-7 within 3x of 1e-11 s: " + (ty_ok ? "yes" : "no");
  return {increasing && tau_ok && ty_ok, detail};
}

bool report(int id, const std::string& title, double budget, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed <= budget;
  const bool pass = o.pass && in_time;
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << (id > 0 ? std::to_string(id) : "slow")
            << ": " << title << " -- " << o.detail << " (" << num(elapsed) << " s of " << num(budget)
            << " s" << (in_time ? "" : ", over budget") << ")" << std::endl;
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool slow = false;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_flag("--slow", slow, "run the long-horizon panels instead");
  CLI11_PARSE(app, argc, argv);

  if (slow) return report(0, "long-horizon panels d = 1e-9, 1e-8, 1e-7", 1800.0, slow_panels) ? 0 : 1;

  const std::vector<Criterion> criteria{
      {1, "non-interacting ground energy matches the closed form", 1.0, free_oracle},
      {2, "sparse eigenvalues match dense diagonalization", 5.0, dense_oracle},
      {3, "ground state exchange symmetric, suppressed on x1 = x2", 30.0, ground_structure},
      {4, "Crank-Nicolson unitarity and second order", 10.0, crank_nicolson},
      {5, "d = 1e-12 leakage close to one at 2e-18 s", 20.0, fig4a},
      {6, "leakage 0.9 times for d = 1e-11 and 1e-10", 240.0, fig4bc},
      {7, "Zeno time trend and magnitude", 120.0, fig6_trend},
      {8, "confidence arithmetic and flagged 82% figure", 5.0, confidence},
      {9, "identical evolve runs give identical files", 60.0, determinism},
      {10, "wavefunction.csv header golden", 10.0, header_golden},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    all = report(c.id, c.title, c.budget_s, c.check) && all;
  }
  return all ? 0 : 1;
}
