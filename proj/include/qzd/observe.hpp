#pragma once

#include <optional>
#include <vector>

#include "qzd/lattice.hpp"
#include "qzd/operators.hpp"

namespace qzd {

/// Leakage probability sampled along an evolution.
struct LeakageSeries {
  std::vector<double> times;   // s, strictly increasing
  std::vector<double> values;  // probability outside the confinement block
  double d = 0.0;
  int n = 0;
  int ratio = 0;
  double dt = 0.0;
};

struct ZenoReport {
  /// hbar / sqrt(<H^2> - <H>^2); empty when the variance vanishes (eigenstate).
  std::optional<double> tau_z;
  double mean_energy = 0.0;    // <H>, J
  double second_moment = 0.0;  // <H^2>, J^2
  double variance = 0.0;       // J^2, clamped at 0
  bool variance_clamped = false;  // a small negative rounding value was set to 0
  double d = 0.0;
  int n = 0;
  int ratio = 0;
};

/// Probability mass on the strictly interior nodes of the embedded block.
double inner_probability(const WaveField& psi, const EmbeddingLayout& layout);

/// Probability outside the confinement block, 1 - inner_probability computed as
/// a direct sum over the outside nodes. Throws ValidationError when
/// |sum |psi|^2 - 1| > 1e-6 and ShapeError when psi is not on the outer grid.
double leakage(const WaveField& psi, const EmbeddingLayout& layout);

/// <psi|H|psi> for a unit state. Throws ValidationError for non-normalized input
/// and NumericalError if the imaginary part is not negligible.
double expectation(const SparseOperator& h, const WaveField& psi);

/// Zeno time of psi0 under the extended Hamiltonian, using <H^2> = ||H psi0||^2.
///
/// A variance below 1e-12 <H^2> (in magnitude) is treated as an exact
/// eigenstate and reported as an unbounded Zeno time.
ZenoReport zeno_time(const WaveField& psi0, const SparseOperator& h_ext,
                     const PhysicalParams& params);

/// hbar / ||Q H psi0|| with Q the projector onto nodes outside the confinement
/// block: the time scale of the quadratic onset L(t) ~ (t / tau)^2. Equals the
/// Zeno time when psi0 is an eigenstate of the block-restricted Hamiltonian.
std::optional<double> projected_zeno_time(const WaveField& psi0, const SparseOperator& h_ext,
                                          const EmbeddingLayout& layout, double hbar);

/// (1 - (tau / tau_z)^2)^n, the survival after n measurements spaced tau apart.
/// Throws DomainError unless 0 <= tau < tau_z and n >= 1.
///
/// For large n with n (tau/tau_z)^2 fixed this tends to exp(-n (tau/tau_z)^2),
/// i.e. exp(-t^2 / (n tau_z^2)) in terms of the total time t = n tau.
double survival_product(double tau, int n, double tau_z);

/// Y^n: probability of staying confined through n measurements that each keep
/// the system with confidence Y. Throws DomainError unless Y in (0, 1], n >= 1.
double confidence_survival(double y, int n);

struct IntervalEstimate {
  enum class Status { Resolved, ExceedsHorizon };
  Status status = Status::Resolved;
  double time = 0.0;  // tau_Y, or the simulated horizon for ExceedsHorizon
};

/// Time at which the leakage first reaches 1 - Y, by linear interpolation
/// between the bracketing samples. Throws ResolutionError when the first
/// sample already exceeds 1 - Y and ConfigError for an empty series or Y
/// outside (0, 1).
IntervalEstimate calibrate_interval(const LeakageSeries& series, double y);

}  // namespace qzd
