#include "polyqubit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyqubit/certify.hpp"
#include "polyqubit/error.hpp"
#include "polyqubit/random.hpp"
#include "polyqubit/spectra.hpp"
#include "polyqubit/statevec.hpp"
#include "polyqubit/synthesis.hpp"

namespace polyqubit {

namespace {

constexpr std::size_t kMaxMessages = 8;

struct NecessityItem {
  std::vector<double> spectrum;
  double min_slack = 0.0;
  int worst_qubit = 1;
  std::uint64_t certificates = 0;
  std::uint64_t certificate_violations = 0;
  double identity_residual = 0.0;
  bool failed = false;
  std::vector<std::string> messages;
};

NecessityItem necessity_item(int n, std::uint64_t seed, bool certify) {
  NecessityItem item;
  const PureState state = haar_sample(n, seed);
  item.spectrum = one_qubit_spectrum(state);
  const auto slacks = polygon_slacks(item.spectrum);
  const auto worst = std::min_element(slacks.begin(), slacks.end());
  item.min_slack = *worst;
  item.worst_qubit = static_cast<int>(worst - slacks.begin()) + 1;
  if (!certify || n < 2) return item;
  for (int k = 1; k <= n; ++k) {
    ++item.certificates;
    try {
      const CertificateReport r = necessity_certificate(state, k);
      if (r.trivial) continue;
      item.identity_residual = std::max({item.identity_residual, r.norm_a_residual, r.norm_b_residual,
                                         r.overlap_residual, r.reconstruction_residual,
                                         std::abs(r.weighted_sum - r.sum_others)});
    } catch (const Error& e) {
      ++item.certificate_violations;
      item.messages.emplace_back(e.what());
    }
  }
  return item;
}

struct SufficiencyItem {
  double error = 0.0;
  double offdiagonal = 0.0;
  double chi_residual = 0.0;
  double acceptance = 0.0;
  bool failed = false;
  std::string message;
};

SufficiencyItem sufficiency_item(int n, std::uint64_t seed) {
  SufficiencyItem item;
  try {
    const SampledSpectrum sampled = sample_feasible_spectrum(n, seed);
    item.acceptance = sampled.acceptance_rate;
    const SynthesisResult result = synth_spectrum(sampled.spectrum);
    for (std::size_t k = 0; k < sampled.spectrum.size(); ++k) {
      item.error = std::max(item.error, std::abs(result.achieved[k] - sampled.spectrum[k]));
      const QubitDensity rho = reduce_one_qubit(result.state, static_cast<int>(k) + 1);
      item.offdiagonal = std::max(item.offdiagonal, std::abs(rho(0, 1)));
      // The construction puts the smaller eigenvalue on |0><0|.
      item.error = std::max(item.error, std::abs(rho(0, 0).real() - sampled.spectrum[k]));
    }
    for (const SynthesisLevel& level : result.trace) {
      if (level.base) continue;
      const double smallest = level.sorted.back();
      item.chi_residual = std::max(item.chi_residual, std::abs(level.sin2_chi * (1.0 - level.reduced_top) - smallest));
    }
  } catch (const std::exception& e) {
    item.failed = true;
    item.message = e.what();
  }
  return item;
}

}  // namespace

NecessitySweep necessity_sweep(int n, std::uint64_t count, std::uint64_t seed, const SweepOptions& options) {
  if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::QubitCap, "qubit count out of range");
  std::vector<NecessityItem> items(count);
#pragma omp parallel for schedule(dynamic, 16) if (options.parallel)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    try {
      items[idx] = necessity_item(n, derive_seed(seed, idx), options.certify);
    } catch (const std::exception& e) {
      items[idx].failed = true;
      items[idx].messages.emplace_back(e.what());
    }
  }

  NecessitySweep out;
  out.n = n;
  out.count = count;
  out.seed = seed;
  out.min_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < count; ++i) {
    NecessityItem& item = items[i];
    if (item.failed) {
      ++out.failures;
      for (std::string& m : item.messages)
        if (out.violations.size() < kMaxMessages) out.violations.push_back(std::move(m));
      continue;
    }
    if (item.min_slack < out.min_slack) {
      out.min_slack = item.min_slack;
      out.worst_sample = i;
      out.worst_qubit = item.worst_qubit;
    }
    if (item.min_slack < -kNecessitySlack) {
      ++out.polygon_violations;
      if (out.violations.size() < kMaxMessages)
        out.violations.push_back("sample " + std::to_string(i) + " violates the polygon inequality");
    }
    if (n == 2) out.max_pair_gap = std::max(out.max_pair_gap, std::abs(item.spectrum[0] - item.spectrum[1]));
    out.certificates += item.certificates;
    out.certificate_violations += item.certificate_violations;
    out.max_identity_residual = std::max(out.max_identity_residual, item.identity_residual);
    for (std::string& m : item.messages)
      if (out.violations.size() < kMaxMessages) out.violations.push_back(std::move(m));
    if (options.keep_spectra) out.spectra.push_back(std::move(item.spectrum));
  }
  if (count == 0) out.min_slack = 0.0;
  return out;
}

SufficiencySweep sufficiency_sweep(int n, std::uint64_t count, std::uint64_t seed, bool parallel) {
  if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::QubitCap, "qubit count out of range");
  std::vector<SufficiencyItem> items(count);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    items[idx] = sufficiency_item(n, derive_seed(seed, idx));
  }

  SufficiencySweep out;
  out.n = n;
  out.count = count;
  out.seed = seed;
  double acceptance = 0.0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const SufficiencyItem& item = items[i];
    out.max_error = std::max(out.max_error, item.error);
    out.max_offdiagonal = std::max(out.max_offdiagonal, item.offdiagonal);
    out.max_chi_residual = std::max(out.max_chi_residual, item.chi_residual);
    acceptance += item.acceptance;
    if (item.failed) {
      ++out.failures;
      if (out.messages.size() < kMaxMessages) out.messages.push_back("item " + std::to_string(i) + ": " + item.message);
    }
  }
  out.mean_acceptance = count ? acceptance / static_cast<double>(count) : 0.0;
  return out;
}

}  // namespace polyqubit
