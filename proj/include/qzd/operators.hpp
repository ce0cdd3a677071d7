#pragma once

#include <cstddef>

#include <Eigen/SparseCore>

#include "qzd/lattice.hpp"

namespace qzd {

/// Two-particle physical constants in SI units. Defaults describe two protons.
struct PhysicalParams {
  double m1 = 1.67262192e-27;  // kg
  double m2 = 1.67262192e-27;  // kg
  double q1 = 1.60217663e-19;  // C
  double q2 = 1.60217663e-19;  // C
  double hbar = 1.05457182e-34;  // J s
  double k = 8.99e9;             // N m^2 / C^2
  double epsilon = 1e-15;        // m, Coulomb regularization length

  /// Throws ConfigError naming the first non-positive field. Charges may be zero
  /// (non-interacting limit) but not negative.
  void validate() const;
};

/// Real sparse operator over the flattened interior of a grid.
class SparseOperator {
public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  SparseOperator() = default;
  explicit SparseOperator(Matrix m) : m_(std::move(m)) {}

  Eigen::Index dimension() const noexcept { return m_.rows(); }
  Eigen::Index nnz() const noexcept { return m_.nonZeros(); }
  const Matrix& matrix() const noexcept { return m_; }

  /// Value at (row, col); zero when the entry is not stored.
  double coeff(Eigen::Index row, Eigen::Index col) const { return m_.coeff(row, col); }

  /// Matrix-vector product. Throws ShapeError on dimension mismatch.
  WaveField apply(const WaveField& psi) const;
  RealField apply(const RealField& psi) const;

  SparseOperator operator+(const SparseOperator& other) const;

private:
  Matrix m_;
};

/// k q1 q2 / sqrt((x1 - x2)^2 + eps^2); finite everywhere.
double coulomb_potential(double x1, double x2, const PhysicalParams& params);

/// Diagonal operator holding the Coulomb energy at each interior node.
SparseOperator build_potential(const SpatialGrid& grid, const PhysicalParams& params);

/// Five-point finite-difference kinetic operator with Dirichlet walls.
///
/// Diagonal hbar^2/(m1 dx^2) + hbar^2/(m2 dx^2); neighbours along x1 couple with
/// -hbar^2/(2 m1 dx^2) and along x2 with -hbar^2/(2 m2 dx^2). Couplings to wall
/// nodes are dropped.
SparseOperator build_kinetic(const SpatialGrid& grid, const PhysicalParams& params);

/// Kinetic plus potential.
SparseOperator build_hamiltonian(const SpatialGrid& grid, const PhysicalParams& params);

}  // namespace qzd
