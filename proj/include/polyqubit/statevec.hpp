#pragma once

// Dense pure states of n qubits.
//
// Qubits are numbered 1..n in every public function. Qubit 1 is the most
// significant bit: the basis label |i_1 i_2 ... i_n> is stored at index
// sum_k i_k * 2^(n-k).

#include <cstdint>
#include <span>
#include <vector>

#include "polyqubit/linalg.hpp"

#ifndef POLYQUBIT_MAX_QUBITS
#define POLYQUBIT_MAX_QUBITS 24
#endif

namespace polyqubit {

inline constexpr int kMaxQubits = POLYQUBIT_MAX_QUBITS;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kFileNormTolerance = 1e-8;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-12;
inline constexpr double kDegeneracyTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
// Eigenvector components below this modulus are skipped when fixing phases.
inline constexpr double kPhaseThreshold = 1e-8;

class PureState {
 public:
  int qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t index) const { return amps_[index]; }

  // Scales `raw` to unit norm. For construction from generated data (random
  // draws, optimizer iterates); use validate_state for anything user-supplied.
  static PureState normalized(int n, std::vector<Complex> raw);

  // |i_1 ... i_n> with the label packed as described above.
  static PureState basis(int n, std::uint64_t label);

 private:
  PureState(int n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {}

  friend PureState validate_state(std::vector<Complex> raw, int n, double tolerance);
  friend PureState permute_qubits(const PureState& state, std::span<const int> perm);
  friend PureState apply_local_unitary(const PureState& state, int qubit, const Mat2& u);

  int n_ = 0;
  std::vector<Complex> amps_;
};

// Checks length 2^n and |sum |a|^2 - 1| <= tolerance. Never renormalizes.
PureState validate_state(std::vector<Complex> raw, int n, double tolerance = kNormTolerance);

struct QubitDensity {
  Mat2 entries{};

  const Complex& operator()(int r, int c) const { return entries[r][c]; }
};

// Throws InvalidDensity unless Hermitian, unit trace and PSD within the
// module tolerances.
void validate_density(const QubitDensity& rho);

struct DensityMatrix {
  std::vector<int> dims;  // local dimension of each factor, most significant first
  CMatrix entries;
};

QubitDensity reduce_one_qubit(const PureState& state, int qubit);

// Partial trace onto `subset` (strictly increasing, 1-based).
DensityMatrix reduce_subset(const PureState& state, std::span<const int> subset);

struct Eig2 {
  double lambda_small = 0.0;
  double lambda_large = 0.0;
  Vec2 v_small{};
  Vec2 v_large{};
  bool degenerate = false;  // lambda_small == 1/2 within kDegeneracyTolerance
};

// Closed-form eigendecomposition of a one-qubit density matrix. Eigenvectors
// have their first component of modulus > kPhaseThreshold real and
// nonnegative; a degenerate input yields (|0>, |1>).
Eig2 eig2(const QubitDensity& rho);

// Smaller eigenvalue of every one-qubit marginal, in qubit order.
std::vector<double> one_qubit_spectrum(const PureState& state);

// |Psi> = coeff0 |local0>|rest0> + coeff1 |local1>|rest1> across qubit 1
// versus the rest, with coeff0^2 the smaller eigenvalue of rho_1.
struct SchmidtSplit {
  double coeff0 = 0.0;
  double coeff1 = 0.0;
  Vec2 local0{};  // eigenvector of rho_1 for the smaller eigenvalue
  Vec2 local1{};
  std::vector<Complex> rest0;  // normalized (n-1)-qubit cofactors
  std::vector<Complex> rest1;
  bool degenerate = false;  // lambda_1 == 0 or 1/2 forced an arbitrary choice
};

SchmidtSplit schmidt_split_first(const PureState& state);

// Reassembles a split; inverse of schmidt_split_first up to rounding.
std::vector<Complex> reassemble(const SchmidtSplit& split);

// Output qubit perm[k-1] carries input qubit k. perm holds 1..n.
PureState permute_qubits(const PureState& state, std::span<const int> perm);

PureState apply_local_unitary(const PureState& state, int qubit, const Mat2& u);

PureState haar_sample(int n, std::uint64_t seed);

// Euclidean distance between amplitude arrays of equal length.
double distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace polyqubit
