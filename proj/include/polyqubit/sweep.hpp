#pragma once

// Batch sweeps over seeded random inputs. Item i always uses
// derive_seed(seed, i) and per-item results are merged in index order, so the
// OpenMP and serial paths return identical reports.

#include <cstdint>
#include <string>
#include <vector>

namespace polyqubit {

// Necessity threshold: a sampled spectrum counts as violating if its minimum
// polygon slack is below -kNecessitySlack.
inline constexpr double kNecessitySlack = 1e-12;

struct SweepOptions {
  bool certify = false;       // run necessity_certificate on every qubit of every sample
  bool keep_spectra = false;  // return every sampled spectrum
  bool parallel = true;
};

struct NecessitySweep {
  int n = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  double min_slack = 0.0;
  std::uint64_t worst_sample = 0;
  int worst_qubit = 1;
  std::uint64_t polygon_violations = 0;
  std::uint64_t certificates = 0;
  std::uint64_t certificate_violations = 0;
  // Largest residual over the certificate identities (normalization,
  // orthogonality, lambda reconstruction, weighted sum).
  double max_identity_residual = 0.0;
  double max_pair_gap = 0.0;  // max |lambda_1 - lambda_2| when n == 2
  std::uint64_t failures = 0;  // samples that raised an unexpected error
  std::vector<std::vector<double>> spectra;
  std::vector<std::string> violations;  // first few messages
};

NecessitySweep necessity_sweep(int n, std::uint64_t count, std::uint64_t seed, const SweepOptions& options = {});

struct SufficiencySweep {
  int n = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  double max_error = 0.0;          // max |achieved - target| over entries
  double max_offdiagonal = 0.0;    // largest off-diagonal marginal entry seen
  double max_chi_residual = 0.0;   // max |sin^2(chi) (1 - reduced_top) - lambda_n|
  double mean_acceptance = 0.0;
  std::uint64_t failures = 0;
  std::vector<std::string> messages;
};

SufficiencySweep sufficiency_sweep(int n, std::uint64_t count, std::uint64_t seed, bool parallel = true);

}  // namespace polyqubit
