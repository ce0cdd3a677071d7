#include "qzd/propagate.hpp"

#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include "qzd/errors.hpp"

namespace qzd {

void PropagatorConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive, got " + std::to_string(dt));
  if (steps < 1) throw ConfigError("num_time_steps must be at least 1");
  if (!(tolerance > 0.0 && tolerance <= 1e-6)) {
    throw ConfigError("solver_tolerance must lie in (0, 1e-6]");
  }
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
}

struct Stepper::Impl {
  PropagatorConfig config;
  ComplexMatrix a;
  ComplexMatrix b;
  Eigen::SparseLU<ComplexMatrix, Eigen::COLAMDOrdering<int>> lu;
  Eigen::BiCGSTAB<ComplexMatrix, Eigen::DiagonalPreconditioner<Complex>> krylov;
  mutable std::atomic<std::size_t> factorizations{0};
  mutable std::atomic<std::size_t> solves{0};
};

Stepper::Stepper(const SparseOperator& h, const PropagatorConfig& config)
    : impl_(std::make_unique<Impl>()) {
  config.validate();
  impl_->config = config;

  const Complex half_step(0.0, config.dt / (2.0 * config.hbar));
  ComplexMatrix hc = h.matrix().cast<Complex>();
  ComplexMatrix eye(hc.rows(), hc.cols());
  eye.setIdentity();
  impl_->a = eye + half_step * hc;
  impl_->b = eye - half_step * hc;
  impl_->a.makeCompressed();
  impl_->b.makeCompressed();

  if (config.mode == SolverMode::Direct) {
    impl_->lu.compute(impl_->a);
    if (impl_->lu.info() != Eigen::Success) {
      throw NumericalError("LU factorization of I + i dt H / 2 hbar failed (" +
                           impl_->lu.lastErrorMessage() + "); H must be Hermitian");
    }
    ++impl_->factorizations;
  } else {
    impl_->krylov.setTolerance(config.tolerance);
    impl_->krylov.setMaxIterations(std::max<Eigen::Index>(1000, 4 * hc.rows()));
    impl_->krylov.compute(impl_->a);
  }
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

WaveField Stepper::step(const WaveField& psi) const {
  if (psi.size() != impl_->a.rows()) {
    throw ShapeError("stepper of dimension " + std::to_string(impl_->a.rows()) +
                     " given a field of size " + std::to_string(psi.size()));
  }
  const WaveField rhs = impl_->b * psi;
  ++impl_->solves;
  if (impl_->config.mode == SolverMode::Direct) {
    return impl_->lu.solve(rhs);
  }
  WaveField out = impl_->krylov.solveWithGuess(rhs, psi);
  if (impl_->krylov.info() != Eigen::Success) {
    throw NumericalError("BiCGSTAB did not converge; achieved relative residual " +
                             std::to_string(impl_->krylov.error()),
                         impl_->krylov.error());
  }
  return out;
}

WaveField Stepper::evolve(const WaveField& psi0, int steps, const Observer& observer) const {
  WaveField psi = psi0;
  for (int k = 1; k <= steps; ++k) {
    psi = step(psi);
    if (observer) observer(k, k * impl_->config.dt, psi);
  }
  return psi;
}

const Stepper::ComplexMatrix& Stepper::system_matrix() const noexcept { return impl_->a; }
const Stepper::ComplexMatrix& Stepper::rhs_matrix() const noexcept { return impl_->b; }
const PropagatorConfig& Stepper::config() const noexcept { return impl_->config; }
std::size_t Stepper::factorizations() const noexcept { return impl_->factorizations; }
std::size_t Stepper::solves() const noexcept { return impl_->solves; }

}  // namespace qzd
