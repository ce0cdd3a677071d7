#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace qzd {

using Complex = std::complex<double>;

/// Complex amplitude per interior node, flattened row-major over (i, j).
using WaveField = Eigen::VectorXcd;
using RealField = Eigen::VectorXd;

/// Uniform square mesh on [0, d]^2 with N subdivisions per axis.
///
/// Only the interior nodes i, j = 1..N-1 carry unknowns; the boundary nodes are
/// implicit zeros (hard wall). Interior node (i, j) is stored at flat index
/// (i-1)*(N-1) + (j-1), so the particle-2 coordinate runs fastest.
class SpatialGrid {
public:
  SpatialGrid(double side, int subdivisions);

  double side() const noexcept { return side_; }
  int subdivisions() const noexcept { return subdivisions_; }
  double spacing() const noexcept { return side_ / subdivisions_; }

  /// Coordinate of node i (0 and N are the walls).
  double coordinate(int i) const noexcept { return i * spacing(); }

  int interior_per_axis() const noexcept { return subdivisions_ - 1; }
  std::size_t size() const noexcept {
    const auto n = static_cast<std::size_t>(interior_per_axis());
    return n * n;
  }

  /// Flat index of interior node (i, j), 1 <= i, j <= N-1.
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(interior_per_axis()) +
           static_cast<std::size_t>(j - 1);
  }

  bool operator==(const SpatialGrid&) const = default;

private:
  double side_;
  int subdivisions_;
};

/// Throws ConfigError naming the offending field when d <= 0 or N < 3.
SpatialGrid make_grid(double side, int subdivisions);

/// Confinement grid centred inside an extended grid with the same spacing.
struct EmbeddingLayout {
  SpatialGrid inner;
  SpatialGrid outer;
  int ratio;
  int offset;  // node shift: inner node i sits at outer node offset + i

  /// True when outer interior node (i, j) lies strictly inside the embedded block.
  bool in_inner_region(int i, int j) const noexcept {
    return i > offset && i < offset + inner.subdivisions() && j > offset &&
           j < offset + inner.subdivisions();
  }
};

/// Requires ratio >= 2 and an even padding (ratio-1)*N.
EmbeddingLayout make_embedding(const SpatialGrid& inner, int ratio);

/// Zero-pads an inner-grid field into the centre of the outer grid.
WaveField embed(const WaveField& psi, const EmbeddingLayout& layout);

/// Inverse of embed: extracts the inner block from an outer-grid field.
WaveField restrict_to_inner(const WaveField& psi, const EmbeddingLayout& layout);

}  // namespace qzd
