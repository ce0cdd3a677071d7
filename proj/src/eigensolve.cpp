#include "qzd/eigensolve.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "qzd/errors.hpp"

namespace qzd {

namespace {

constexpr double kPolishThreshold = 1e-6;

// Uniform in [-1, 1) from the raw 64-bit stream, so the starting block is
// identical on every standard library.
Eigen::MatrixXd starting_block(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      x(r, c) = static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
    }
  }
  return x;
}

void fix_sign(RealField& v) {
  const double threshold = 1e-6 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > threshold) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

EigenSolution lowest_eigenpairs(const SparseOperator& h, int count,
                                const EigenSolverOptions& options) {
  const Eigen::Index n = h.dimension();
  if (count < 1 || count >= n) {
    throw ConfigError("eigenpair count must be in [1, " + std::to_string(n) + "), got " +
                      std::to_string(count));
  }
  if (!(options.tol > 0.0) || options.max_iters < 1) {
    throw ConfigError("eigensolver tolerance must be positive and max_iters >= 1");
  }

  const Eigen::SparseMatrix<double> hc = h.matrix();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt(hc);
  if (ldlt.info() != Eigen::Success) {
    throw NumericalError("LDL^T factorization of the Hamiltonian failed");
  }
  if (ldlt.vectorD().minCoeff() <= 0.0) {
    throw ConfigError("Hamiltonian is not positive definite; shift-invert at zero needs like charges");
  }

  const Eigen::Index block = std::min<Eigen::Index>(n, count + std::max(count, 4));
  Eigen::MatrixXd x = starting_block(n, block, options.seed);
  Eigen::MatrixXd hx;
  Eigen::VectorXd theta;
  std::vector<double> residuals(static_cast<std::size_t>(count));
  double best = std::numeric_limits<double>::infinity();

  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    const Eigen::MatrixXd y = ldlt.solve(x);
    const Eigen::MatrixXd q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(y).householderQ() * Eigen::MatrixXd::Identity(n, block);
    const Eigen::MatrixXd hq = hc * q;
    Eigen::MatrixXd g = q.transpose() * hq;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(g);
    theta = ritz.eigenvalues();
    x = q * ritz.eigenvectors();
    hx = hq * ritz.eigenvectors();

    double worst = 0.0;
    for (int c = 0; c < count; ++c) {
      const double denom = hx.col(c).norm();
      const double r = (hx.col(c) - theta[c] * x.col(c)).norm() / denom;
      residuals[static_cast<std::size_t>(c)] = r;
      worst = std::max(worst, r);
    }
    best = std::min(best, worst);
    if (worst <= options.tol) break;

    // Near convergence the orthogonalization leaves absolute errors of order
    // eps * ||x|| on nodes where the potential is huge, which caps the relative
    // residual. One more inverse step per Ritz vector, without re-orthogonalizing,
    // restores componentwise accuracy there.
    if (worst <= kPolishThreshold) {
      Eigen::MatrixXd px = ldlt.solve(x.leftCols(count));
      Eigen::VectorXd ptheta(count);
      std::vector<double> pres(static_cast<std::size_t>(count));
      double pworst = 0.0;
      for (int c = 0; c < count; ++c) {
        px.col(c).normalize();
        const Eigen::VectorXd hv = hc * px.col(c);
        ptheta[c] = px.col(c).dot(hv);
        pres[static_cast<std::size_t>(c)] = (hv - ptheta[c] * px.col(c)).norm() / hv.norm();
        pworst = std::max(pworst, pres[static_cast<std::size_t>(c)]);
      }
      best = std::min(best, pworst);
      if (pworst <= options.tol) {
        x.leftCols(count) = px;
        theta.head(count) = ptheta;
        residuals = pres;
        break;
      }
    }
  }
  if (iter == options.max_iters) {
    std::ostringstream msg;
    msg << "eigensolver did not reach tolerance " << options.tol << " within "
        << options.max_iters << " iterations; best residual " << best;
    throw NumericalError(msg.str(),
                         best);
  }

  EigenSolution out;
  out.iterations = iter + 1;
  for (int c = 0; c < count; ++c) {
    RealField v = x.col(c).normalized();
    fix_sign(v);
    out.values.push_back(theta[c]);
    out.states.push_back(std::move(v));
  }
  out.residuals = residuals;
  return out;
}

}  // namespace qzd
