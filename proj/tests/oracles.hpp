// Independent dense reference computations used by the unit and acceptance
// tests. Nothing here goes through the sparse assembly or the solvers under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qzd/lattice.hpp"
#include "qzd/operators.hpp"

namespace qzd::oracle {

/// Hamiltonian assembled densely by visiting every pair of interior nodes and
/// evaluating the continuum-derived stencil term by term.
inline Eigen::MatrixXd dense_hamiltonian(double d, int n_sub, const PhysicalParams& p) {
  const int n = n_sub - 1;
  const double dx = d / n_sub;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int a = 0; a < n * n; ++a) {
    const int i = a / n + 1;
    const int j = a % n + 1;
    for (int b = 0; b < n * n; ++b) {
      const int ii = b / n + 1;
      const int jj = b % n + 1;
      double v = 0.0;
      // -hbar^2/2 [ (psi(i+1,j) + psi(i-1,j) - 2 psi(i,j)) / (m1 dx^2) + same in j / m2 ]
      if (jj == j && std::abs(ii - i) == 1) v += -p.hbar * p.hbar / (2.0 * p.m1 * dx * dx);
      if (ii == i && std::abs(jj - j) == 1) v += -p.hbar * p.hbar / (2.0 * p.m2 * dx * dx);
      if (a == b) {
        v += p.hbar * p.hbar / (p.m1 * dx * dx) + p.hbar * p.hbar / (p.m2 * dx * dx);
        v += p.k * p.q1 * p.q2 / std::sqrt((i - j) * (i - j) * dx * dx + p.epsilon * p.epsilon);
      }
      h(a, b) = v;
    }
  }
  return h;
}

/// Lowest eigenvalue of the free two-particle Dirichlet problem on the mesh.
inline double free_ground_energy(double d, int n_sub, const PhysicalParams& p) {
  const double dx = d / n_sub;
  return (p.hbar * p.hbar / (dx * dx)) * (1.0 / p.m1 + 1.0 / p.m2) *
         (1.0 - std::cos(M_PI / n_sub));
}

inline Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& h) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

/// exp(-i H t / hbar) by full diagonalization.
inline Eigen::MatrixXcd exact_propagator(const Eigen::MatrixXd& h, double t, double hbar) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd phase(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    phase[k] = std::exp(std::complex<double>(0.0, -lam[k] * t / hbar));
  }
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  return v * phase.asDiagonal() * v.adjoint();
}

inline Eigen::VectorXd random_real(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = dist(gen);
  return v;
}

inline Eigen::VectorXcd random_unit_complex(Eigen::Index n, std::uint64_t seed) {
  const Eigen::VectorXd re = random_real(n, seed);
  const Eigen::VectorXd im = random_real(n, seed + 7919);
  Eigen::VectorXcd v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = {re[k], im[k]};
  return v.normalized();
}

}  // namespace qzd::oracle
