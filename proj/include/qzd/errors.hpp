#pragma once

#include <stdexcept>
#include <string>

namespace qzd {

/// Invalid user-supplied parameter or configuration value. Maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree (state vs grid, operator vs state).
class ShapeError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Input violates a numerical precondition, e.g. a state that is not unit-normalized.
class ValidationError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Argument outside the domain where a formula is valid.
class DomainError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// The time step is too coarse to resolve the requested quantity.
class ResolutionError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Solver failed to converge or hit an internal invariant. Maps to exit code 2.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double best_residual = -1.0)
      : std::runtime_error(what), best_residual_(best_residual) {}

  /// Best relative residual achieved before giving up; negative when not applicable.
  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

/// File could not be read or written. Maps to exit code 3.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Runs fn, prefixing any qzd error message with `context` while keeping its
/// exit-code category.
template <class F>
decltype(auto) with_context(const std::string& context, F&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(context + ": " + e.what(), e.best_residual());
  } catch (const IoError& e) {
    throw IoError(context + ": " + e.what());
  }
}

}  // namespace qzd
