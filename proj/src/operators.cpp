#include "qzd/operators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qzd/errors.hpp"

namespace qzd {

void PhysicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(name) + " must be positive and finite, got " +
                        std::to_string(v));
    }
  };
  positive(m1, "m1");
  positive(m2, "m2");
  positive(hbar, "hbar");
  positive(k, "k");
  positive(epsilon, "epsilon");
  if (!(q1 >= 0.0) || !(q2 >= 0.0)) {
    throw ConfigError("charges q1, q2 must be non-negative");
  }
}

WaveField SparseOperator::apply(const WaveField& psi) const {
  if (psi.size() != dimension()) {
    throw ShapeError("operator of dimension " + std::to_string(dimension()) +
                     " applied to a field of size " + std::to_string(psi.size()));
  }
  return m_ * psi;
}

RealField SparseOperator::apply(const RealField& psi) const {
  if (psi.size() != dimension()) {
    throw ShapeError("operator of dimension " + std::to_string(dimension()) +
                     " applied to a field of size " + std::to_string(psi.size()));
  }
  return m_ * psi;
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
  if (other.dimension() != dimension()) {
    throw ShapeError("cannot add operators of dimension " + std::to_string(dimension()) +
                     " and " + std::to_string(other.dimension()));
  }
  Matrix sum = m_ + other.m_;
  sum.makeCompressed();
  return SparseOperator(std::move(sum));
}

double coulomb_potential(double x1, double x2, const PhysicalParams& params) {
  const double sep = x1 - x2;
  return params.k * params.q1 * params.q2 / std::sqrt(sep * sep + params.epsilon * params.epsilon);
}

SparseOperator build_potential(const SpatialGrid& grid, const PhysicalParams& params) {
  const int n = grid.interior_per_axis();
  const auto dim = static_cast<Eigen::Index>(grid.size());
  SparseOperator::Matrix m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto a = static_cast<Eigen::Index>(grid.index(i, j));
      m.insert(a, a) = coulomb_potential(grid.coordinate(i), grid.coordinate(j), params);
    }
  }
  m.makeCompressed();
  return SparseOperator(std::move(m));
}

SparseOperator build_kinetic(const SpatialGrid& grid, const PhysicalParams& params) {
  const int n = grid.interior_per_axis();
  const double dx2 = grid.spacing() * grid.spacing();
  const double h2 = params.hbar * params.hbar;
  const double off1 = -h2 / (2.0 * params.m1 * dx2);
  const double off2 = -h2 / (2.0 * params.m2 * dx2);
  const double diag = -2.0 * (off1 + off2);

  const auto dim = static_cast<Eigen::Index>(grid.size());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(dim) * 5);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto a = static_cast<Eigen::Index>(grid.index(i, j));
      entries.emplace_back(a, a, diag);
      if (i > 1) entries.emplace_back(a, static_cast<Eigen::Index>(grid.index(i - 1, j)), off1);
      if (i < n) entries.emplace_back(a, static_cast<Eigen::Index>(grid.index(i + 1, j)), off1);
      if (j > 1) entries.emplace_back(a, static_cast<Eigen::Index>(grid.index(i, j - 1)), off2);
      if (j < n) entries.emplace_back(a, static_cast<Eigen::Index>(grid.index(i, j + 1)), off2);
    }
  }
  SparseOperator::Matrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return SparseOperator(std::move(m));
}

SparseOperator build_hamiltonian(const SpatialGrid& grid, const PhysicalParams& params) {
  return build_kinetic(grid, params) + build_potential(grid, params);
}

}  // namespace qzd
