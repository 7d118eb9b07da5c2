#pragma once

// Pure states with prescribed one-qubit marginals.
//
// synth_spectrum builds, for any spectrum satisfying the polygon inequalities,
// a state whose k-th one-qubit marginal is diag(lambda_k, 1 - lambda_k). The
// construction is recursive: with the values sorted in descending order
// (l_1 >= ... >= l_n), an (n-1)-qubit state for (l_1 - l_n, l_2, ..., l_{n-1})
// is written |0>|phi> + |1>|psi> along its first qubit and extended to
//
//   |0>|phi>|1> + sin(chi)|0>|psi>|0> + cos(chi)|1>|psi>|1>,
//
// with sin^2(chi) <psi|psi> = l_n. Three-qubit spectra are realized directly by
// a|100> + b|010> + c|001> + d|111>, one- and two-qubit spectra by |1> and a
// Schmidt form. All amplitudes produced here are real and nonnegative.

#include <vector>

#include "polyqubit/spectra.hpp"
#include "polyqubit/statevec.hpp"

namespace polyqubit {

// Radicands in [-kRadicandClamp, 0) are treated as 0.
inline constexpr double kRadicandClamp = 1e-12;
// Polygon tolerance accepted by the synthesizers. A slack of -eps maps to a
// three-qubit radicand of -eps/2, so this matches the clamp window.
inline constexpr double kSynthesisEps = 2 * kRadicandClamp;

struct SynthesisLevel {
  int qubits = 0;
  // order[i] is the 1-based position (in this level's input) of the i-th largest value.
  std::vector<int> order;
  std::vector<double> sorted;
  bool base = false;            // n <= 3: realized directly, no reduction
  int case_tag = 0;             // 1: l_1 - l_n is still the largest; 2: some l_m exceeds it
  double reduced_top = 0.0;     // l_1 - l_n
  double chi = 0.0;
  double sin2_chi = 0.0;
  double phi_norm2 = 0.0;       // <phi|phi>, equals reduced_top
  double psi_norm2 = 0.0;       // <psi|psi>, equals 1 - reduced_top
};

struct SynthesisResult {
  PureState state;
  std::vector<SynthesisLevel> trace;  // outermost level first
  Spectrum achieved;                  // recomputed by partial trace
};

PureState synth_base3(double l1, double l2, double l3);

// n = 1 needs lambda = 0; n = 2 needs lambda_1 == lambda_2 within kSynthesisEps.
PureState synth_small(const Spectrum& spectrum);

// Throws Infeasible when check_polygon(spectrum, kSynthesisEps) fails and
// InternalInvariant if a reduced spectrum inside the recursion is infeasible.
SynthesisResult synth_spectrum(const Spectrum& spectrum);

// Realizes full one-qubit density matrices: synthesizes the spectrum, then
// rotates qubit k by the unitary sending |0>, |1> to the target eigenvectors.
PureState synth_density(const std::vector<QubitDensity>& targets);

}  // namespace polyqubit
