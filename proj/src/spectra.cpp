#include "polyqubit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "polyqubit/error.hpp"

namespace polyqubit {

Spectrum::Spectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw Error(ErrorKind::OutOfRange, "spectrum must have at least one entry");
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    double& x = lambdas_[i];
    if (!std::isfinite(x) || x < -kSpectrumClamp || x > 0.5 + kSpectrumClamp)
      throw Error(ErrorKind::OutOfRange,
                  "lambda_" + std::to_string(i + 1) + " = " + std::to_string(x) + " lies outside [0, 1/2]");
    x = std::clamp(x, 0.0, 0.5);
  }
}

std::vector<double> polygon_slacks(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  std::vector<double> slacks;
  slacks.reserve(values.size());
  for (double v : values) slacks.push_back((total - v) - v);
  return slacks;
}

FeasibilityReport summarize_slacks(std::vector<double> slacks, double eps) {
  FeasibilityReport report;
  report.eps = eps;
  const auto worst = std::min_element(slacks.begin(), slacks.end());
  report.worst_index = static_cast<int>(worst - slacks.begin()) + 1;
  report.min_slack = *worst;
  report.feasible = report.min_slack >= -eps;
  report.boundary = std::abs(report.min_slack) <= eps;
  report.slacks = std::move(slacks);
  return report;
}

FeasibilityReport check_polygon(const Spectrum& spectrum, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidConfig, "eps must be nonnegative");
  return summarize_slacks(polygon_slacks(spectrum.lambdas()), eps);
}

SampledSpectrum sample_feasible_spectrum(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::WrongSize, "spectrum needs at least one qubit");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uniform(0.0, 0.5);
  if (n == 1) return SampledSpectrum{Spectrum({0.0}), 1, 1.0};
  if (n == 2) {
    const double x = uniform(gen);
    return SampledSpectrum{Spectrum({x, x}), 1, 1.0};
  }
  std::vector<double> draw(static_cast<std::size_t>(n));
  for (std::uint64_t attempt = 1;; ++attempt) {
    for (double& x : draw) x = uniform(gen);
    const auto slacks = polygon_slacks(draw);
    if (*std::min_element(slacks.begin(), slacks.end()) >= 0.0)
      return SampledSpectrum{Spectrum(draw), attempt, 1.0 / static_cast<double>(attempt)};
  }
}

}  // namespace polyqubit
