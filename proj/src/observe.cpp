#include "qzd/observe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qzd/errors.hpp"

namespace qzd {

namespace {

constexpr double kNormSlack = 1e-6;

void require_unit(const WaveField& psi, const char* who) {
  const double norm2 = psi.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormSlack) {
    throw ValidationError(std::string(who) + ": state is not unit-normalized (sum |psi|^2 = " +
                          std::to_string(norm2) + ")");
  }
}

void require_outer(const WaveField& psi, const EmbeddingLayout& layout) {
  if (static_cast<std::size_t>(psi.size()) != layout.outer.size()) {
    throw ShapeError("field of size " + std::to_string(psi.size()) +
                     " is not on the extended grid (" + std::to_string(layout.outer.size()) + ")");
  }
}

}  // namespace

double inner_probability(const WaveField& psi, const EmbeddingLayout& layout) {
  require_outer(psi, layout);
  const int n = layout.inner.interior_per_axis();
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      sum += std::norm(psi[static_cast<Eigen::Index>(
          layout.outer.index(layout.offset + i, layout.offset + j))]);
    }
  }
  return sum;
}

double leakage(const WaveField& psi, const EmbeddingLayout& layout) {
  require_outer(psi, layout);
  require_unit(psi, "leakage");
  const int n = layout.outer.interior_per_axis();
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (!layout.in_inner_region(i, j)) {
        sum += std::norm(psi[static_cast<Eigen::Index>(layout.outer.index(i, j))]);
      }
    }
  }
  return sum;
}

double expectation(const SparseOperator& h, const WaveField& psi) {
  require_unit(psi, "expectation");
  const Complex value = psi.dot(h.apply(psi));  // conjugates psi
  if (std::abs(value.imag()) > 1e-12 * std::abs(value.real()) &&
      std::abs(value.imag()) > 0.0) {
    throw NumericalError("expectation value has a non-negligible imaginary part");
  }
  return value.real();
}

ZenoReport zeno_time(const WaveField& psi0, const SparseOperator& h_ext,
                     const PhysicalParams& params) {
  require_unit(psi0, "zeno_time");
  const WaveField h_psi = h_ext.apply(psi0);
  ZenoReport report;
  report.mean_energy = psi0.dot(h_psi).real();
  report.second_moment = h_psi.squaredNorm();
  const double variance = report.second_moment - report.mean_energy * report.mean_energy;
  if (std::abs(variance) < 1e-12 * report.second_moment) {
    report.variance = std::max(variance, 0.0);
    report.variance_clamped = variance < 0.0;
    return report;
  }
  if (variance < 0.0) {
    throw NumericalError("negative energy variance " + std::to_string(variance) +
                         " beyond rounding slack; operator is not Hermitian");
  }
  report.variance = variance;
  report.tau_z = params.hbar / std::sqrt(variance);
  return report;
}

std::optional<double> projected_zeno_time(const WaveField& psi0, const SparseOperator& h_ext,
                                          const EmbeddingLayout& layout, double hbar) {
  require_outer(psi0, layout);
  require_unit(psi0, "projected_zeno_time");
  const WaveField h_psi = h_ext.apply(psi0);
  const int n = layout.outer.interior_per_axis();
  double outside = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (!layout.in_inner_region(i, j)) {
        outside += std::norm(h_psi[static_cast<Eigen::Index>(layout.outer.index(i, j))]);
      }
    }
  }
  if (outside <= 0.0) return std::nullopt;
  return hbar / std::sqrt(outside);
}

double survival_product(double tau, int n, double tau_z) {
  if (n < 1) throw DomainError("measurement count must be at least 1");
  if (!(tau_z > 0.0)) throw DomainError("Zeno time must be positive");
  if (!(tau >= 0.0) || tau >= tau_z) {
    throw DomainError("measurement interval must satisfy 0 <= tau < tau_z; shrink the interval");
  }
  const double x = tau / tau_z;
  return std::clamp(std::pow(1.0 - x * x, n), 0.0, 1.0);
}

double confidence_survival(double y, int n) {
  if (!(y > 0.0 && y <= 1.0)) throw DomainError("confidence level must lie in (0, 1]");
  if (n < 1) throw DomainError("measurement count must be at least 1");
  return std::pow(y, n);
}

IntervalEstimate calibrate_interval(const LeakageSeries& series, double y) {
  if (series.values.empty() || series.values.size() != series.times.size()) {
    throw ConfigError("leakage series is empty or malformed");
  }
  if (!(y > 0.0 && y <= 1.0)) throw DomainError("confidence level must lie in (0, 1]");
  const double threshold = 1.0 - y;
  const auto& v = series.values;
  const auto& t = series.times;
  if (v.front() > threshold) {
    throw ResolutionError("leakage " + std::to_string(v.front()) + " already exceeds " +
                          std::to_string(threshold) + " at the first sample t = " +
                          std::to_string(t.front()) + " s; use a smaller dt");
  }
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > threshold) {
      const double frac = (threshold - v[k - 1]) / (v[k] - v[k - 1]);
      return {IntervalEstimate::Status::Resolved, t[k - 1] + frac * (t[k] - t[k - 1])};
    }
  }
  return {IntervalEstimate::Status::ExceedsHorizon, t.back()};
}

}  // namespace qzd
