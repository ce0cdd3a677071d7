#include "qzd/lattice.hpp"

#include <string>

#include "qzd/errors.hpp"

namespace qzd {

SpatialGrid::SpatialGrid(double side, int subdivisions)
    : side_(side), subdivisions_(subdivisions) {
  if (!(side > 0.0)) {
    throw ConfigError("d must be positive, got " + std::to_string(side));
  }
  if (subdivisions < 3) {
    throw ConfigError("N must be at least 3, got " + std::to_string(subdivisions));
  }
}

SpatialGrid make_grid(double side, int subdivisions) { return SpatialGrid(side, subdivisions); }

EmbeddingLayout make_embedding(const SpatialGrid& inner, int ratio) {
  if (ratio < 2) {
    throw ConfigError("confinement_ratio must be at least 2, got " + std::to_string(ratio));
  }
  const int n = inner.subdivisions();
  const int padding = (ratio - 1) * n;
  if (padding % 2 != 0) {
    throw ConfigError("confinement_ratio " + std::to_string(ratio) + " with N = " +
                      std::to_string(n) +
                      " leaves an odd padding; (confinement_ratio - 1) * N must be even");
  }
  return EmbeddingLayout{inner, SpatialGrid(ratio * inner.side(), ratio * n), ratio,
                         padding / 2};
}

namespace {

void check_shape(const WaveField& psi, const SpatialGrid& grid, const char* which) {
  if (static_cast<std::size_t>(psi.size()) != grid.size()) {
    throw ShapeError(std::string("field has ") + std::to_string(psi.size()) +
                     " entries but the " + which + " grid has " + std::to_string(grid.size()));
  }
}

}  // namespace

WaveField embed(const WaveField& psi, const EmbeddingLayout& layout) {
  check_shape(psi, layout.inner, "inner");
  WaveField out = WaveField::Zero(static_cast<Eigen::Index>(layout.outer.size()));
  const int n = layout.inner.interior_per_axis();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out[static_cast<Eigen::Index>(layout.outer.index(layout.offset + i, layout.offset + j))] =
          psi[static_cast<Eigen::Index>(layout.inner.index(i, j))];
    }
  }
  return out;
}

WaveField restrict_to_inner(const WaveField& psi, const EmbeddingLayout& layout) {
  check_shape(psi, layout.outer, "outer");
  WaveField out(static_cast<Eigen::Index>(layout.inner.size()));
  const int n = layout.inner.interior_per_axis();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out[static_cast<Eigen::Index>(layout.inner.index(i, j))] =
          psi[static_cast<Eigen::Index>(layout.outer.index(layout.offset + i, layout.offset + j))];
    }
  }
  return out;
}

}  // namespace qzd
