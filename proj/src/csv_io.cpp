#include "qzd/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qzd/errors.hpp"

namespace qzd {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 10);
  (void)ec;
  return std::string(buf, end);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

void export_wavefunction_csv(const RealField& density, const SpatialGrid& grid,
                             const std::filesystem::path& path) {
  if (static_cast<std::size_t>(density.size()) != grid.size()) {
    throw ShapeError("density has " + std::to_string(density.size()) + " entries, grid has " +
                     std::to_string(grid.size()));
  }
  std::string text = kWavefunctionHeader;
  text += '\n';
  const int n = grid.interior_per_axis();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      text += format_number(grid.coordinate(i));
      text += ',';
      text += format_number(grid.coordinate(j));
      text += ',';
      text += format_number(density[static_cast<Eigen::Index>(grid.index(i, j))]);
      text += '\n';
    }
  }
  write_text_file(path, text);
}

std::vector<std::array<double, 3>> read_wavefunction_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kWavefunctionHeader) {
    throw IoError(path.string() + ": missing wavefunction header");
  }
  std::vector<std::array<double, 3>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 3> row{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 3; ++c) {
      auto [next, ec] = std::from_chars(p, end, row[static_cast<std::size_t>(c)]);
      if (ec != std::errc{} || (c < 2 && (next == end || *next != ','))) {
        throw IoError(path.string() + ": malformed row at line " + std::to_string(line_no));
      }
      p = next + (c < 2 ? 1 : 0);
    }
    rows.push_back(row);
  }
  return rows;
}

void export_leakage_csv(const LeakageSeries& series, const std::filesystem::path& path) {
  std::string text = "time_s,leakage\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    text += format_number(series.times[k]);
    text += ',';
    text += format_number(series.values[k]);
    text += '\n';
  }
  write_text_file(path, text);
}

void export_zeno_csv(const std::vector<ZenoRow>& rows, const std::filesystem::path& path) {
  std::string text = "d_m,tau_z_s,mean_energy_J,variance_J2\n";
  for (const auto& row : rows) {
    text += format_number(row.d);
    text += ',';
    text += format_number(row.report.tau_z.value_or(INFINITY));
    text += ',';
    text += format_number(row.report.mean_energy);
    text += ',';
    text += format_number(row.report.variance);
    text += '\n';
  }
  write_text_file(path, text);
}

}  // namespace qzd
