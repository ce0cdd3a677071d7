#pragma once

#include <cstdint>
#include <vector>

#include "qzd/operators.hpp"

namespace qzd {

struct EigenSolverOptions {
  double tol = 1e-10;        // relative residual ||H psi - E psi|| / ||H psi||
  int max_iters = 10000;
  std::uint64_t seed = 20240601;  // starting block
};

struct EigenSolution {
  std::vector<double> values;     // ascending, J
  std::vector<RealField> states;  // unit norm, first significant entry positive
  std::vector<double> residuals;
  int iterations = 0;
};

/// The `count` smallest eigenpairs of a symmetric positive definite operator.
///
/// Shift-invert block subspace iteration: H is factored once (sparse LDL^T),
/// a block of count + guard vectors is repeatedly multiplied by H^{-1},
/// re-orthonormalized and Rayleigh-Ritz projected onto H. The guard vectors
/// make convergence of the wanted pairs depend on E_count / E_{block}, so
/// near-degenerate pairs converge as quickly as isolated ones.
///
/// Throws ConfigError when count is not in [1, dimension) or H is not positive
/// definite, NumericalError (with the best residual) after max_iters sweeps.
EigenSolution lowest_eigenpairs(const SparseOperator& h, int count,
                                const EigenSolverOptions& options = {});

}  // namespace qzd
