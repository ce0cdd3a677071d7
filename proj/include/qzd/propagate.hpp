#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>

#include <Eigen/SparseCore>

#include "qzd/operators.hpp"

namespace qzd {

enum class SolverMode { Direct, Iterative };

struct PropagatorConfig {
  double dt = 1e-20;     // s
  int steps = 10;
  double tolerance = 1e-13;  // relative residual, iterative mode only
  SolverMode mode = SolverMode::Direct;
  double hbar = 1.05457182e-34;

  /// dt > 0, steps >= 1, tolerance in (0, 1e-6].
  void validate() const;
};

/// Crank-Nicolson stepper psi_{k+1} = A^{-1} B psi_k with
/// A = I + (i dt / 2 hbar) H and B = I - (i dt / 2 hbar) H, the Cayley
/// approximation of exp(-i H dt / hbar). With the opposite sign the scheme runs
/// backwards in time; for a real initial state that only conjugates psi, so
/// densities and leakage are the same either way.
///
/// In direct mode A is LU-factored once at construction and reused by every
/// step. Iterative mode runs BiCGSTAB with a Jacobi preconditioner, warm-started
/// from the current state. In direct mode steps may run concurrently on
/// distinct states; the iterative solver keeps per-solve diagnostics and does not.
class Stepper {
public:
  using ComplexMatrix = Eigen::SparseMatrix<Complex>;

  Stepper(const SparseOperator& h, const PropagatorConfig& config);
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Stepper& operator=(Stepper&&) noexcept;

  /// One Crank-Nicolson step. Throws ShapeError on size mismatch and
  /// NumericalError when the iterative solve fails to converge.
  WaveField step(const WaveField& psi) const;

  using Observer = std::function<void(int step, double time, const WaveField& state)>;

  /// Applies `steps` steps, calling observer after each one with the step
  /// index (1-based) and elapsed time step * dt.
  WaveField evolve(const WaveField& psi0, int steps, const Observer& observer = {}) const;

  const ComplexMatrix& system_matrix() const noexcept;  // A
  const ComplexMatrix& rhs_matrix() const noexcept;     // B
  const PropagatorConfig& config() const noexcept;

  std::size_t factorizations() const noexcept;
  std::size_t solves() const noexcept;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline Stepper make_stepper(const SparseOperator& h, const PropagatorConfig& config) {
  return Stepper(h, config);
}

}  // namespace qzd
