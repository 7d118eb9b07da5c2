#include "polyqubit/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polyqubit/error.hpp"
#include "polyqubit/kernels.hpp"

namespace polyqubit {

namespace {

// Assertion tolerance for reduced spectra inside the recursion. The reduction
// preserves exact feasibility, so only accumulated rounding is allowed on top
// of the input tolerance.
constexpr double kLevelEps = kSynthesisEps + 1e-14;

double clamped_sqrt(double radicand, const char* what) {
  if (radicand >= 0.0) return std::sqrt(radicand);
  if (radicand >= -kRadicandClamp) return 0.0;
  std::ostringstream os;
  os << what << " radicand " << radicand << " is negative beyond the clamp window";
  throw Error(ErrorKind::Infeasible, os.str());
}

std::vector<Complex> base3_amplitudes(double l1, double l2, double l3) {
  const double a = clamped_sqrt(0.5 * (l2 + l3 - l1), "a");
  const double b = clamped_sqrt(0.5 * (l3 + l1 - l2), "b");
  const double c = clamped_sqrt(0.5 * (l1 + l2 - l3), "c");
  const double d = clamped_sqrt(1.0 - a * a - b * b - c * c, "d");
  std::vector<Complex> amps(8);
  amps[0b100] = a;
  amps[0b010] = b;
  amps[0b001] = c;
  amps[0b111] = d;
  return amps;
}

std::vector<Complex> small_amplitudes(std::span<const double> lambdas) {
  const std::vector<double> values(lambdas.begin(), lambdas.end());
  const FeasibilityReport report = summarize_slacks(polygon_slacks(values), kSynthesisEps);
  if (!report.feasible) {
    std::ostringstream os;
    os << (values.size() == 1 ? "a single qubit of a pure state must be pure"
                              : "two-qubit spectra must have equal entries")
       << " (min slack " << report.min_slack << ")";
    throw Error(ErrorKind::Infeasible, os.str());
  }
  if (values.size() == 1) return {Complex{0.0}, Complex{1.0}};
  const double lam = std::clamp(0.5 * (values[0] + values[1]), 0.0, 0.5);
  return {std::sqrt(lam), 0.0, 0.0, std::sqrt(1.0 - lam)};
}

class Builder {
 public:
  std::vector<SynthesisLevel> trace;

  // Amplitudes of a state whose qubit i carries lambdas[i] on |0><0|.
  std::vector<Complex> build(std::span<const double> lambdas) {
    const int n = static_cast<int>(lambdas.size());
    if (n <= 2) return small_amplitudes(lambdas);

    const std::size_t level_index = trace.size();
    trace.emplace_back();
    SynthesisLevel level;
    level.qubits = n;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return lambdas[i] > lambdas[j]; });
    std::vector<double> sorted;
    sorted.reserve(order.size());
    for (int i : order) sorted.push_back(lambdas[static_cast<std::size_t>(i)]);
    for (int i : order) level.order.push_back(i + 1);
    level.sorted = sorted;

    std::vector<Complex> amps;
    if (n == 3) {
      level.base = true;
      amps = base3_amplitudes(sorted[0], sorted[1], sorted[2]);
    } else {
      amps = extend(sorted, level);
    }
    trace[level_index] = std::move(level);

    // Sorted slot i holds input qubit order[i].
    std::vector<int> target(order.begin(), order.end());
    return kernels::permute_sites(amps, n, target);
  }

 private:
  std::vector<Complex> extend(const std::vector<double>& sorted, SynthesisLevel& level) {
    const std::size_t n = sorted.size();
    const double smallest = sorted[n - 1];
    const double reduced_top = sorted[0] - smallest;
    level.reduced_top = reduced_top;
    level.case_tag = 1;
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (reduced_top < sorted[i]) level.case_tag = 2;

    std::vector<double> reduced(sorted.begin(), sorted.end() - 1);
    reduced[0] = reduced_top;
    const FeasibilityReport check = summarize_slacks(polygon_slacks(reduced), kLevelEps);
    if (!check.feasible) {
      std::ostringstream os;
      os << "reduced spectrum at level n=" << n << " has slack " << check.min_slack;
      throw Error(ErrorKind::InternalInvariant, os.str());
    }

    // Inner qubit 0 carries reduced_top, inner qubit i carries sorted[i].
    const std::vector<Complex> inner = build(reduced);
    const std::size_t half = inner.size() / 2;
    const std::span<const Complex> phi(inner.data(), half);
    const std::span<const Complex> psi(inner.data() + half, half);
    for (const Complex& c : phi) level.phi_norm2 += std::norm(c);
    for (const Complex& c : psi) level.psi_norm2 += std::norm(c);

    // psi_norm2 = 1 - reduced_top >= 1/2 >= smallest.
    level.sin2_chi = std::clamp(smallest / level.psi_norm2, 0.0, 1.0);
    level.chi = std::asin(std::sqrt(level.sin2_chi));
    const double sin_chi = std::sin(level.chi);
    const double cos_chi = std::cos(level.chi);

    // Output layout: first qubit, the n-2 middle qubits of phi/psi, last qubit.
    std::vector<Complex> out(2 * inner.size());
    const std::size_t top = std::size_t{1} << (n - 1);
    for (std::size_t m = 0; m < half; ++m) {
      out[(m << 1) | 1] = phi[m];
      out[m << 1] = sin_chi * psi[m];
      out[top | (m << 1) | 1] = cos_chi * psi[m];
    }
    return out;
  }
};

Spectrum measured_spectrum(const PureState& state) {
  std::vector<double> lambdas = one_qubit_spectrum(state);
  for (double& x : lambdas) x = std::clamp(x, 0.0, 0.5);
  return Spectrum(std::move(lambdas));
}

}  // namespace

PureState synth_base3(double l1, double l2, double l3) {
  const Spectrum spectrum({l1, l2, l3});
  return validate_state(base3_amplitudes(spectrum[0], spectrum[1], spectrum[2]), 3);
}

PureState synth_small(const Spectrum& spectrum) {
  if (spectrum.size() > 2) throw Error(ErrorKind::WrongSize, "synth_small handles one or two qubits");
  const int n = static_cast<int>(spectrum.size());
  return validate_state(small_amplitudes(spectrum.lambdas()), n);
}

SynthesisResult synth_spectrum(const Spectrum& spectrum) {
  const FeasibilityReport report = check_polygon(spectrum, kSynthesisEps);
  if (!report.feasible) {
    std::ostringstream os;
    os << "polygon inequality for qubit " << report.worst_index << " fails with slack " << report.min_slack;
    throw Error(ErrorKind::Infeasible, os.str());
  }
  Builder builder;
  std::vector<Complex> amps = builder.build(spectrum.lambdas());
  PureState state = validate_state(std::move(amps), static_cast<int>(spectrum.size()));
  Spectrum achieved = measured_spectrum(state);
  return SynthesisResult{std::move(state), std::move(builder.trace), std::move(achieved)};
}

PureState synth_density(const std::vector<QubitDensity>& targets) {
  if (targets.empty()) throw Error(ErrorKind::WrongSize, "need at least one target");
  std::vector<Eig2> eigen;
  eigen.reserve(targets.size());
  std::vector<double> lambdas;
  for (const QubitDensity& rho : targets) {
    eigen.push_back(eig2(rho));
    lambdas.push_back(std::clamp(eigen.back().lambda_small, 0.0, 0.5));
  }
  PureState state = synth_spectrum(Spectrum(std::move(lambdas))).state;
  for (std::size_t k = 0; k < eigen.size(); ++k) {
    if (eigen[k].degenerate) continue;
    state = apply_local_unitary(state, static_cast<int>(k) + 1, from_columns(eigen[k].v_small, eigen[k].v_large));
  }
  return state;
}

}  // namespace polyqubit
