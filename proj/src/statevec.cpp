#include "polyqubit/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyqubit/error.hpp"
#include "polyqubit/kernels.hpp"
#include "polyqubit/random.hpp"

namespace polyqubit {

namespace {

void check_qubit_count(int n) {
  if (n < 1) throw Error(ErrorKind::WrongSize, "qubit count must be at least 1");
  if (n > kMaxQubits)
    throw Error(ErrorKind::QubitCap, std::to_string(n) + " qubits exceeds the cap of " + std::to_string(kMaxQubits));
}

void check_qubit_index(const PureState& state, int qubit) {
  if (qubit < 1 || qubit > state.qubits())
    throw Error(ErrorKind::IndexOutOfRange,
                "qubit " + std::to_string(qubit) + " not in 1.." + std::to_string(state.qubits()));
}

void fix_phase(Vec2& v) {
  for (Complex& c : v) {
    const double mag = std::abs(c);
    if (mag > kPhaseThreshold) {
      const Complex rot = std::conj(c) / mag;
      v[0] *= rot;
      v[1] *= rot;
      // Exactly real after rotation; drop the rounding residue.
      c = Complex{mag, 0.0};
      return;
    }
  }
}

// Unit vector orthogonal to `v`, built from the basis vector on which v is smallest.
std::vector<Complex> orthogonal_unit(std::span<const Complex> v) {
  std::size_t pick = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) < std::abs(v[pick])) pick = i;
  std::vector<Complex> out(v.size());
  out[pick] = 1.0;
  const Complex overlap = std::conj(v[pick]);  // <v|e_pick>
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= overlap * v[i];
  double norm2 = 0.0;
  for (const Complex& c : out) norm2 += std::norm(c);
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : out) c *= scale;
  return out;
}

}  // namespace

PureState PureState::normalized(int n, std::vector<Complex> raw) {
  check_qubit_count(n);
  if (raw.size() != (std::size_t{1} << n))
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(std::size_t{1} << n) + " amplitudes, got " +
                                               std::to_string(raw.size()));
  const double norm2 = kernels::squared_norm(raw);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw Error(ErrorKind::NotNormalized, "cannot normalize a zero vector");
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : raw) c *= scale;
  return PureState(n, std::move(raw));
}

PureState PureState::basis(int n, std::uint64_t label) {
  check_qubit_count(n);
  std::vector<Complex> amps(std::size_t{1} << n);
  if (label >= amps.size()) throw Error(ErrorKind::IndexOutOfRange, "basis label out of range");
  amps[label] = 1.0;
  return validate_state(std::move(amps), n);
}

PureState validate_state(std::vector<Complex> raw, int n, double tolerance) {
  check_qubit_count(n);
  const std::size_t expected = std::size_t{1} << n;
  if (raw.size() != expected)
    throw Error(ErrorKind::LengthMismatch,
                "expected " + std::to_string(expected) + " amplitudes, got " + std::to_string(raw.size()));
  const double norm2 = kernels::squared_norm(raw);
  const double deviation = std::abs(norm2 - 1.0);
  if (!(deviation <= tolerance)) throw NotNormalizedError(deviation);
  return PureState(n, std::move(raw));
}

void validate_density(const QubitDensity& rho) {
  const Mat2& m = rho.entries;
  for (const auto& row : m)
    for (const Complex& c : row)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw Error(ErrorKind::InvalidDensity, "non-finite entry");
  const double herm = std::max({std::abs(m[0][1] - std::conj(m[1][0])), std::abs(m[0][0].imag()),
                                std::abs(m[1][1].imag())});
  if (herm > kHermitianTolerance) throw Error(ErrorKind::InvalidDensity, "matrix is not Hermitian");
  const double trace = m[0][0].real() + m[1][1].real();
  if (std::abs(trace - 1.0) > kTraceTolerance) throw Error(ErrorKind::InvalidDensity, "trace differs from 1");
  const double half_gap = 0.5 * (m[0][0].real() - m[1][1].real());
  const double smallest = 0.5 * trace - std::sqrt(half_gap * half_gap + std::norm(m[0][1]));
  if (smallest < -kPsdTolerance) throw Error(ErrorKind::InvalidDensity, "matrix has a negative eigenvalue");
}

QubitDensity reduce_one_qubit(const PureState& state, int qubit) {
  check_qubit_index(state, qubit);
  return QubitDensity{kernels::reduce_one_qubit(state.amplitudes(), state.qubits(), qubit - 1)};
}

DensityMatrix reduce_subset(const PureState& state, std::span<const int> subset) {
  if (subset.empty()) throw Error(ErrorKind::BadSubset, "subset must be nonempty");
  std::vector<int> sites;
  sites.reserve(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > state.qubits() || (i > 0 && subset[i] <= subset[i - 1]))
      throw Error(ErrorKind::BadSubset, "subset must be strictly increasing within 1..n");
    sites.push_back(subset[i] - 1);
  }
  return DensityMatrix{std::vector<int>(subset.size(), 2),
                       kernels::reduce_sites(state.amplitudes(), 2, state.qubits(), sites)};
}

Eig2 eig2(const QubitDensity& rho) {
  validate_density(rho);
  const Mat2& m = rho.entries;
  const double a = m[0][0].real();
  const double b = m[1][1].real();
  const Complex g = 0.5 * (m[0][1] + std::conj(m[1][0]));
  const double half_gap = 0.5 * (a - b);
  const double radius = std::sqrt(half_gap * half_gap + std::norm(g));

  Eig2 out;
  out.lambda_small = 0.5 - radius;
  out.lambda_large = 0.5 + radius;
  if (radius <= kDegeneracyTolerance) {
    out.lambda_small = 0.5;
    out.lambda_large = 0.5;
    out.v_small = Vec2{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    out.v_large = Vec2{Complex{0.0, 0.0}, Complex{1.0, 0.0}};
    out.degenerate = true;
    return out;
  }

  // Two null vectors of (rho - lambda I); keep the better conditioned one.
  // Using the trace-centred form avoids needing a + b == 1 exactly.
  const double centre = 0.5 * (a + b);
  const double lam = centre - radius;
  const Vec2 from_row0{g, Complex{lam - a, 0.0}};
  const Vec2 from_row1{Complex{lam - b, 0.0}, std::conj(g)};
  const double n0 = std::norm(from_row0[0]) + std::norm(from_row0[1]);
  const double n1 = std::norm(from_row1[0]) + std::norm(from_row1[1]);
  Vec2 v = n0 >= n1 ? from_row0 : from_row1;
  const double scale = 1.0 / std::sqrt(std::max(n0, n1));
  v[0] *= scale;
  v[1] *= scale;
  Vec2 w{-std::conj(v[1]), std::conj(v[0])};
  fix_phase(v);
  fix_phase(w);
  out.v_small = v;
  out.v_large = w;
  return out;
}

std::vector<double> one_qubit_spectrum(const PureState& state) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(state.qubits()));
  for (int k = 1; k <= state.qubits(); ++k) out.push_back(eig2(reduce_one_qubit(state, k)).lambda_small);
  return out;
}

SchmidtSplit schmidt_split_first(const PureState& state) {
  if (state.qubits() < 2) throw Error(ErrorKind::SingleQubit, "a one-qubit state has no split");
  const Eig2 e = eig2(reduce_one_qubit(state, 1));
  const std::size_t half = state.dimension() / 2;
  const auto amps = state.amplitudes();

  SchmidtSplit split;
  split.local0 = e.v_small;
  split.local1 = e.v_large;
  split.rest0.resize(half);
  split.rest1.resize(half);
  // (<phi_j| x I)|Psi>
  for (std::size_t r = 0; r < half; ++r) {
    split.rest0[r] = std::conj(e.v_small[0]) * amps[r] + std::conj(e.v_small[1]) * amps[half + r];
    split.rest1[r] = std::conj(e.v_large[0]) * amps[r] + std::conj(e.v_large[1]) * amps[half + r];
  }
  auto normalize = [](std::vector<Complex>& v) {
    double norm2 = 0.0;
    for (const Complex& c : v) norm2 += std::norm(c);
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& c : v) c *= scale;
  };

  if (e.lambda_small <= kDegeneracyTolerance) {
    // Weights from the cofactor norms keep reassembly exact; an exact product
    // gets A = 0 and an arbitrary orthogonal rest0.
    const auto norm_of = [](const std::vector<Complex>& v) {
      double s = 0.0;
      for (const Complex& c : v) s += std::norm(c);
      return std::sqrt(s);
    };
    split.coeff0 = norm_of(split.rest0);
    split.coeff1 = norm_of(split.rest1);
    normalize(split.rest1);
    if (split.coeff0 > 0.0) {
      normalize(split.rest0);
    } else {
      split.rest0 = orthogonal_unit(split.rest1);
    }
    split.degenerate = true;
    return split;
  }
  split.coeff0 = std::sqrt(e.lambda_small);
  split.coeff1 = std::sqrt(e.lambda_large);
  normalize(split.rest0);
  normalize(split.rest1);
  split.degenerate = e.degenerate;
  return split;
}

std::vector<Complex> reassemble(const SchmidtSplit& split) {
  const std::size_t half = split.rest0.size();
  std::vector<Complex> out(2 * half);
  for (std::size_t r = 0; r < half; ++r) {
    const Complex t0 = split.coeff0 * split.rest0[r];
    const Complex t1 = split.coeff1 * split.rest1[r];
    out[r] = split.local0[0] * t0 + split.local1[0] * t1;
    out[half + r] = split.local0[1] * t0 + split.local1[1] * t1;
  }
  return out;
}

PureState permute_qubits(const PureState& state, std::span<const int> perm) {
  const int n = state.qubits();
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorKind::NotAPermutation, "permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)])
      throw Error(ErrorKind::NotAPermutation, "permutation must be a bijection of 1..n");
    seen[static_cast<std::size_t>(p - 1)] = true;
  }
  std::vector<int> target;
  target.reserve(perm.size());
  for (int p : perm) target.push_back(p - 1);
  return PureState(n, kernels::permute_sites(state.amplitudes(), n, target));
}

PureState apply_local_unitary(const PureState& state, int qubit, const Mat2& u) {
  check_qubit_index(state, qubit);
  if (max_abs_diff(multiply(adjoint(u), u), kIdentity2) > kUnitaryTolerance)
    throw Error(ErrorKind::NotUnitary, "matrix is not unitary");
  const int n = state.qubits();
  const std::size_t stride = std::size_t{1} << (n - qubit);
  const auto amps = state.amplitudes();
  std::vector<Complex> out(amps.begin(), amps.end());
  const long long dim = static_cast<long long>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kernels::kParallelThreshold)
  for (long long i = 0; i < dim; ++i) {
    const std::size_t i0 = static_cast<std::size_t>(i);
    if (i0 & stride) continue;
    const Complex a0 = amps[i0];
    const Complex a1 = amps[i0 | stride];
    out[i0] = u[0][0] * a0 + u[0][1] * a1;
    out[i0 | stride] = u[1][0] * a0 + u[1][1] * a1;
  }
  return PureState(n, std::move(out));
}

PureState haar_sample(int n, std::uint64_t seed) {
  check_qubit_count(n);
  return PureState::normalized(n, haar_amplitudes(std::size_t{1} << n, seed));
}

double distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "amplitude arrays differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum);
}

}  // namespace polyqubit
