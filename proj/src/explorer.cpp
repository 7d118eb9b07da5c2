#include "polyqubit/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyqubit/error.hpp"
#include "polyqubit/kernels.hpp"
#include "polyqubit/random.hpp"

namespace polyqubit {

namespace {

constexpr int kFourQubits = 4;
constexpr std::size_t kFourQubitDim = 16;
constexpr std::size_t kMaxQuditAmplitudes = std::size_t{1} << kMaxQubits;

std::array<int, 2> pair_sites(const QubitPair& pair) {
  const auto [p, q] = pair;
  if (p < 1 || p > kFourQubits || q < 1 || q > kFourQubits || p == q)
    throw Error(ErrorKind::InvalidConfig, "pairs must name two distinct qubits in 1..4");
  return {std::min(p, q) - 1, std::max(p, q) - 1};
}

void check_four_qubit_array(std::span<const Complex> amps) {
  if (amps.size() != kFourQubitDim) throw Error(ErrorKind::WrongSize, "objective is defined on four qubits");
}

double inner_real(std::span<const Complex> a, std::span<const Complex> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (std::conj(a[i]) * b[i]).real();
  return sum;
}

void normalize_in_place(std::vector<Complex>& v) {
  double norm2 = 0.0;
  for (const Complex& c : v) norm2 += std::norm(c);
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : v) c *= scale;
}

struct Descent {
  std::vector<Complex> point;
  double initial = 0.0;
  double value = 0.0;
  int iterations = 0;
};

Descent descend(std::vector<Complex> psi, const SearchConfig& config) {
  Descent out;
  out.value = mixedness_objective_raw(psi, config.pairs);
  out.initial = out.value;
  double step = config.initial_step;
  std::vector<Complex> trial(psi.size());
  for (int iter = 0; iter < config.max_iters; ++iter) {
    std::vector<Complex> grad = mixedness_gradient_raw(psi, config.pairs);
    const double radial = inner_real(psi, grad);
    double grad_norm2 = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      grad[i] -= radial * psi[i];
      grad_norm2 += std::norm(grad[i]);
    }
    if (std::sqrt(grad_norm2) < config.gradient_tolerance) break;

    bool accepted = false;
    double trial_value = out.value;
    while (step > 1e-16) {
      for (std::size_t i = 0; i < psi.size(); ++i) trial[i] = psi[i] - step * grad[i];
      normalize_in_place(trial);
      trial_value = mixedness_objective_raw(trial, config.pairs);
      if (trial_value <= out.value - config.armijo * step * grad_norm2) {
        accepted = true;
        break;
      }
      step *= config.shrink;
    }
    if (!accepted) break;
    psi.swap(trial);
    out.value = trial_value;
    out.iterations = iter + 1;
    step = std::min(step * 2.0, 1.0);
  }
  out.point = std::move(psi);
  return out;
}

}  // namespace

double mixedness_objective_raw(std::span<const Complex> amps, std::span<const QubitPair> pairs) {
  check_four_qubit_array(amps);
  double total = 0.0;
  for (const QubitPair& pair : pairs) {
    const auto sites = pair_sites(pair);
    CMatrix rho = kernels::reduce_sites(amps, 2, kFourQubits, sites);
    for (std::size_t i = 0; i < 4; ++i) rho(i, i) -= 0.25;
    total += frobenius_norm_squared(rho);
  }
  return total;
}

std::vector<Complex> mixedness_gradient_raw(std::span<const Complex> amps, std::span<const QubitPair> pairs) {
  check_four_qubit_array(amps);
  // Per pair: d/dpsi* of tr(rho^2) - tr(rho)/2 + 1/4 is 2 (rho x I) psi - psi/2;
  // the real gradient is twice that.
  std::vector<Complex> grad(amps.size());
  for (const QubitPair& pair : pairs) {
    const auto sites = pair_sites(pair);
    const CMatrix rho = kernels::reduce_sites(amps, 2, kFourQubits, sites);
    const int bit_hi = kFourQubits - 1 - sites[0];
    const int bit_lo = kFourQubits - 1 - sites[1];
    const std::size_t mask = (std::size_t{1} << bit_hi) | (std::size_t{1} << bit_lo);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const std::size_t r = (((i >> bit_hi) & 1U) << 1) | ((i >> bit_lo) & 1U);
      const std::size_t base = i & ~mask;
      Complex applied{};
      for (std::size_t s = 0; s < 4; ++s) {
        const std::size_t j = base | ((s >> 1) << bit_hi) | ((s & 1U) << bit_lo);
        applied += rho(r, s) * amps[j];
      }
      grad[i] += 4.0 * applied - amps[i];
    }
  }
  return grad;
}

double pair_mixedness_objective(const PureState& state, std::span<const QubitPair> pairs) {
  if (state.qubits() != kFourQubits) throw Error(ErrorKind::WrongSize, "objective is defined on four qubits");
  return mixedness_objective_raw(state.amplitudes(), pairs);
}

void validate_config(const SearchConfig& config) {
  if (config.restarts < 1) throw Error(ErrorKind::InvalidConfig, "restarts must be at least 1");
  if (config.max_iters < 0) throw Error(ErrorKind::InvalidConfig, "max_iters must be nonnegative");
  if (!(config.initial_step > 0.0)) throw Error(ErrorKind::InvalidConfig, "initial_step must be positive");
  if (!(config.shrink > 0.0 && config.shrink < 1.0)) throw Error(ErrorKind::InvalidConfig, "shrink must be in (0, 1)");
  if (!(config.armijo > 0.0 && config.armijo < 1.0)) throw Error(ErrorKind::InvalidConfig, "armijo must be in (0, 1)");
  if (!(config.gradient_tolerance >= 0.0)) throw Error(ErrorKind::InvalidConfig, "gradient_tolerance must be >= 0");
  for (const QubitPair& pair : config.pairs) pair_sites(pair);
}

SearchResult search_mixed4(const SearchConfig& config) {
  validate_config(config);
  const auto restarts = static_cast<std::size_t>(config.restarts);
  std::vector<RestartOutcome> outcomes(restarts);
  std::vector<std::vector<Complex>> finals(restarts);

#pragma omp parallel for schedule(dynamic) if (config.parallel)
  for (long long r = 0; r < static_cast<long long>(restarts); ++r) {
    const auto idx = static_cast<std::size_t>(r);
    const std::uint64_t seed = derive_seed(config.seed, idx);
    Descent d = descend(haar_amplitudes(kFourQubitDim, seed), config);
    outcomes[idx] = RestartOutcome{static_cast<int>(r), seed, d.initial, d.value, d.iterations};
    finals[idx] = std::move(d.point);
  }

  std::vector<double> best_so_far;
  std::size_t best = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (outcomes[r].final_objective < outcomes[best].final_objective) best = r;
    best_so_far.push_back(outcomes[best].final_objective);
  }
  return SearchResult{outcomes[best].final_objective,
                      static_cast<int>(best),
                      PureState::normalized(kFourQubits, std::move(finals[best])),
                      std::move(outcomes),
                      std::move(best_so_far),
                      kMixednessObjective};
}

namespace {

void check_qudit_shape(int d, int n) {
  if (d < 2) throw Error(ErrorKind::WrongSize, "local dimension must be at least 2");
  if (n < 1) throw Error(ErrorKind::WrongSize, "need at least one site");
  if (kernels::checked_power(d, n) > kMaxQuditAmplitudes)
    throw Error(ErrorKind::QubitCap, "qudit state exceeds the amplitude cap");
}

}  // namespace

QuditState QuditState::normalized(int d, int n, std::vector<Complex> raw) {
  check_qudit_shape(d, n);
  if (raw.size() != kernels::checked_power(d, n)) throw Error(ErrorKind::LengthMismatch, "expected d^n amplitudes");
  normalize_in_place(raw);
  return QuditState(d, n, std::move(raw));
}

QuditState validate_qudit_state(std::vector<Complex> raw, int d, int n, double tolerance) {
  check_qudit_shape(d, n);
  const std::size_t expected = kernels::checked_power(d, n);
  if (raw.size() != expected)
    throw Error(ErrorKind::LengthMismatch,
                "expected " + std::to_string(expected) + " amplitudes, got " + std::to_string(raw.size()));
  const double deviation = std::abs(kernels::squared_norm(raw) - 1.0);
  if (!(deviation <= tolerance)) throw NotNormalizedError(deviation);
  return QuditState(d, n, std::move(raw));
}

QuditState haar_qudit_sample(int d, int n, std::uint64_t seed) {
  check_qudit_shape(d, n);
  return QuditState::normalized(d, n, haar_amplitudes(kernels::checked_power(d, n), seed));
}

DensityMatrix reduce_one_qudit(const QuditState& state, int site) {
  if (site < 1 || site > state.sites())
    throw Error(ErrorKind::IndexOutOfRange, "site " + std::to_string(site) + " out of range");
  const int d = state.local_dim();
  if (d == 2) {
    const Mat2 m = kernels::reduce_one_qubit(state.amplitudes(), state.sites(), site - 1);
    CMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = m[r][c];
    return DensityMatrix{{2}, std::move(out)};
  }
  const int sites[] = {site - 1};
  return DensityMatrix{{d}, kernels::reduce_sites(state.amplitudes(), d, state.sites(), sites)};
}

QuditPolygonReport qudit_polygon_check(const QuditState& state, double eps) {
  QuditPolygonReport report;
  for (int k = 1; k <= state.sites(); ++k) {
    const DensityMatrix rho = reduce_one_qudit(state, k);
    if (state.local_dim() == 2) {
      QubitDensity q;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) q.entries[r][c] = rho.entries(r, c);
      const Eig2 e = eig2(q);
      report.spectra.push_back({e.lambda_small, e.lambda_large});
      report.mu.push_back(e.lambda_small);
    } else {
      HermitianEigen e = hermitian_eigen(rho.entries);
      report.mu.push_back(1.0 - e.values.back());
      report.spectra.push_back(std::move(e.values));
    }
  }
  report.polygon = summarize_slacks(polygon_slacks(report.mu), eps);
  return report;
}

}  // namespace polyqubit
