#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace polyqubit {

// Values within this distance outside [0, 1/2] are clamped onto the interval.
inline constexpr double kSpectrumClamp = 1e-12;
inline constexpr double kDefaultFeasibilityEps = 1e-9;

// Smaller eigenvalues of the one-qubit marginals, one per qubit, each in [0, 1/2].
class Spectrum {
 public:
  // Throws OutOfRange for an empty list or a value further than kSpectrumClamp
  // outside [0, 1/2].
  explicit Spectrum(std::vector<double> lambdas);

  std::size_t size() const noexcept { return lambdas_.size(); }
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  double operator[](std::size_t i) const { return lambdas_[i]; }

 private:
  std::vector<double> lambdas_;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<double> slacks;  // (sum of the others) - lambda_k
  int worst_index = 1;         // 1-based qubit with minimal slack (first on ties)
  double min_slack = 0.0;
  bool boundary = false;  // min slack within [-eps, eps]
  double eps = kDefaultFeasibilityEps;
};

// Slack of every polygon inequality; shared by the qubit and qudit checks.
std::vector<double> polygon_slacks(std::span<const double> values);

// Feasible iff every slack is >= -eps.
FeasibilityReport check_polygon(const Spectrum& spectrum, double eps = kDefaultFeasibilityEps);
FeasibilityReport summarize_slacks(std::vector<double> slacks, double eps);

struct SampledSpectrum {
  Spectrum spectrum;
  std::uint64_t attempts = 0;
  double acceptance_rate = 1.0;
};

// Uniform on the feasible part of [0, 1/2]^n by rejection. n = 1 always gives
// (0); n = 2 draws one value and repeats it, since the feasible set there is
// the diagonal.
SampledSpectrum sample_feasible_spectrum(int n, std::uint64_t seed);

}  // namespace polyqubit
