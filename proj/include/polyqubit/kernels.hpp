#pragma once

// Partial-trace kernels over raw amplitude arrays.
//
// Layout: n sites of local dimension d, site 0 is the most significant digit,
// so basis label (i_0, ..., i_{n-1}) lives at index sum_k i_k * d^(n-1-k).
// Sites here are 0-based; the public statevec API converts from 1-based qubits.
//
// Each kernel has a plain serial reference and an OpenMP version. The OpenMP
// versions sum every output entry in a fixed order that does not depend on the
// thread count, so serial and parallel runs of the parallel kernel are bitwise
// identical. The references use a different summation order and agree with
// the parallel kernels to rounding.

#include <cstddef>
#include <span>
#include <vector>

#include "polyqubit/linalg.hpp"

namespace polyqubit::kernels {

// Amplitude count below which the OpenMP kernels stay single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

// One-qubit marginal of qubit `site` for an n-qubit array.
Mat2 reduce_one_qubit_serial(std::span<const Complex> amps, int n, int site);
Mat2 reduce_one_qubit(std::span<const Complex> amps, int n, int site);

// Marginal on the strictly increasing `sites`; kept sites keep their relative
// order, first kept site most significant. The OpenMP version mirrors the
// upper triangle, so its output is exactly Hermitian.
CMatrix reduce_sites_serial(std::span<const Complex> amps, int d, int n, std::span<const int> sites);
CMatrix reduce_sites(std::span<const Complex> amps, int d, int n, std::span<const int> sites);

// Partial trace of a density matrix over factor dimensions `dims`, keeping the
// strictly increasing factor positions `keep`.
CMatrix trace_out(const CMatrix& rho, std::span<const int> dims, std::span<const int> keep);

// Relabels qubits of an n-qubit array: site k of the input becomes site
// target[k] of the output. `target` must be a permutation of 0..n-1.
std::vector<Complex> permute_sites(std::span<const Complex> amps, int n, std::span<const int> target);

// Squared norm with a fixed blocked summation order.
double squared_norm(std::span<const Complex> amps);

std::size_t checked_power(int base, int exponent);

}  // namespace polyqubit::kernels
