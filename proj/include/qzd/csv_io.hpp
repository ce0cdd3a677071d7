#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "qzd/lattice.hpp"
#include "qzd/observe.hpp"

namespace qzd {

inline constexpr const char* kWavefunctionHeader =
    "Particle 1 Position,Particle 2 Position,Eigenvector Squared";

/// Scientific notation with 11 significant digits ("1.0000000000e-12"),
/// independent of the process locale. Non-finite values print as inf/nan.
std::string format_number(double value);

/// One row per interior node of `grid`, row-major in (i, j): x(i), x(j), density.
void export_wavefunction_csv(const RealField& density, const SpatialGrid& grid,
                             const std::filesystem::path& path);

/// Rows of a wavefunction CSV (header checked, not returned).
std::vector<std::array<double, 3>> read_wavefunction_csv(const std::filesystem::path& path);

/// time_s,leakage
void export_leakage_csv(const LeakageSeries& series, const std::filesystem::path& path);

struct ZenoRow {
  double d;
  ZenoReport report;
};

/// d_m,tau_z_s,mean_energy_J,variance_J2; an unbounded Zeno time prints as inf.
void export_zeno_csv(const std::vector<ZenoRow>& rows, const std::filesystem::path& path);

/// Writes `text` verbatim, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qzd
