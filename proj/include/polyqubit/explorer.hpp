#pragma once

// Numerical experiments beyond the one-qubit theorem:
//  * how close a four-qubit pure state can get to having totally mixed
//    two-qubit marginals (evidence only, never a proof), and
//  * the qudit analogue of the polygon inequalities, with lambda_k replaced by
//    one minus the largest eigenvalue of the k-th one-qudit marginal.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyqubit/spectra.hpp"
#include "polyqubit/statevec.hpp"

namespace polyqubit {

using QubitPair = std::pair<int, int>;

inline const std::vector<QubitPair> kDefaultPairs{{1, 2}, {1, 3}, {1, 4}};

inline constexpr const char* kMixednessObjective = "sum over pairs of ||rho_pair - I/4||_F^2";

// Sum over `pairs` of the squared Frobenius distance between the two-qubit
// marginal and I/4. Requires a four-qubit state (WrongSize otherwise).
double pair_mixedness_objective(const PureState& state, std::span<const QubitPair> pairs);

// Same objective on a raw four-qubit amplitude array (no normalization
// assumed), and its real gradient: entry i holds df/dRe(psi_i) + i df/dIm(psi_i).
double mixedness_objective_raw(std::span<const Complex> amps, std::span<const QubitPair> pairs);
std::vector<Complex> mixedness_gradient_raw(std::span<const Complex> amps, std::span<const QubitPair> pairs);

struct SearchConfig {
  int restarts = 100;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  double initial_step = 0.1;
  double gradient_tolerance = 1e-10;  // stop once the tangent gradient norm is below this
  double armijo = 1e-4;
  double shrink = 0.5;
  std::vector<QubitPair> pairs = kDefaultPairs;
  bool parallel = true;
};

struct RestartOutcome {
  int index = 0;
  std::uint64_t seed = 0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
};

struct SearchResult {
  double best_objective = 0.0;
  int best_restart = 0;
  PureState best_state;
  std::vector<RestartOutcome> per_restart;
  std::vector<double> best_so_far;  // running minimum over restarts 0..r
  std::string objective = kMixednessObjective;
};

void validate_config(const SearchConfig& config);

// Riemannian gradient descent with Armijo backtracking on the unit sphere of
// C^16, from Haar-random starts. Restart r starts from derive_seed(seed, r);
// results are merged by restart index, so the parallel and serial paths agree.
SearchResult search_mixed4(const SearchConfig& config);

class QuditState {
 public:
  int local_dim() const noexcept { return d_; }
  int sites() const noexcept { return n_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  static QuditState normalized(int d, int n, std::vector<Complex> raw);

 private:
  QuditState(int d, int n, std::vector<Complex> amps) : d_(d), n_(n), amps_(std::move(amps)) {}
  friend QuditState validate_qudit_state(std::vector<Complex> raw, int d, int n, double tolerance);

  int d_ = 2;
  int n_ = 1;
  std::vector<Complex> amps_;
};

// Digits are big-endian like the qubit layout. Same checks as validate_state.
QuditState validate_qudit_state(std::vector<Complex> raw, int d, int n, double tolerance = kNormTolerance);
QuditState haar_qudit_sample(int d, int n, std::uint64_t seed);

// Marginal of site k (1-based).
DensityMatrix reduce_one_qudit(const QuditState& state, int site);

struct QuditPolygonReport {
  std::vector<std::vector<double>> spectra;  // ascending eigenvalues per site
  std::vector<double> mu;                    // 1 - largest eigenvalue per site
  FeasibilityReport polygon;                 // slacks of mu_k <= sum of the others
};

QuditPolygonReport qudit_polygon_check(const QuditState& state, double eps = kDefaultFeasibilityEps);

}  // namespace polyqubit
