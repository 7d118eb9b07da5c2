#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "polyqubit/error.hpp"
#include "polyqubit/spectra.hpp"
#include "polyqubit/statevec.hpp"

using namespace polyqubit;

namespace {

double mat_diff(const QubitDensity& rho, const CMatrix& ref) {
  double out = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out = std::max(out, std::abs(rho(r, c) - ref(static_cast<std::size_t>(r), static_cast<std::size_t>(c))));
  return out;
}

QubitDensity diag(double a, double b) {
  QubitDensity rho;
  rho.entries[0][0] = a;
  rho.entries[1][1] = b;
  return rho;
}

std::vector<int> random_perm(int n, std::mt19937_64& gen) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

Mat2 random_unitary(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  const double t = u(gen), a = u(gen), b = u(gen), c = u(gen);
  const Complex ea{std::cos(a), std::sin(a)}, eb{std::cos(b), std::sin(b)}, ec{std::cos(c), std::sin(c)};
  return Mat2{{{ea * std::cos(t), eb * std::sin(t)}, {-ec * std::conj(eb) * std::sin(t), ec * std::conj(ea) * std::cos(t)}}};
}

}  // namespace

TEST(ValidateState, AcceptsBasisAndNormalizedInput) {
  const PureState s = validate_state({1, 0, 0, 0}, 2);
  EXPECT_EQ(s.qubits(), 2);
  EXPECT_EQ(s[0], Complex{1});
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NO_THROW(validate_state({r, r, 0, 0}, 2));
}

TEST(ValidateState, RejectsUnnormalizedWithDeviation) {
  try {
    validate_state({1, 1, 0, 0}, 2);
    FAIL() << "expected NotNormalized";
  } catch (const NotNormalizedError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNormalized);
    EXPECT_DOUBLE_EQ(e.deviation(), 1.0);
  }
}

TEST(ValidateState, RejectsWrongLengthAndCap) {
  try {
    validate_state({1, 0, 0}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
  try {
    PureState::basis(kMaxQubits + 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QubitCap);
  }
}

TEST(ReduceOneQubit, Examples) {
  const QubitDensity bell = reduce_one_qubit(oracle::bell(), 1);
  EXPECT_NEAR(bell(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(bell(1, 1).real(), 0.5, 1e-15);
  EXPECT_EQ(std::abs(bell(0, 1)), 0.0);

  const QubitDensity one = reduce_one_qubit(PureState::basis(3, 0b100), 1);
  EXPECT_EQ(one(0, 0), Complex{0});
  EXPECT_EQ(one(1, 1), Complex{1});

  const PureState w = oracle::w3();
  const QubitDensity rw = reduce_one_qubit(w, 1);
  EXPECT_LT(mat_diff(rw, oracle::partial_trace(w, {1})), 1e-15);
  EXPECT_NEAR(rw(0, 0).real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rw(1, 1).real(), 1.0 / 3.0, 1e-15);
}

TEST(ReduceOneQubit, PropertyMatchesOracleAndPreservesTrace) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    const PureState s = haar_sample(n, seed);
    for (int k = 1; k <= n; ++k) {
      const QubitDensity rho = reduce_one_qubit(s, k);
      EXPECT_LT(mat_diff(rho, oracle::partial_trace(s, {k})), 1e-13);
      EXPECT_NEAR((rho(0, 0) + rho(1, 1)).real(), 1.0, 1e-10);
      EXPECT_NO_THROW(validate_density(rho));
    }
  }
}

TEST(ReduceSubset, Examples) {
  const DensityMatrix full = reduce_subset(oracle::bell(), std::vector<int>{1, 2});
  const double h = 0.5;
  EXPECT_NEAR(full.entries(0, 0).real(), h, 1e-15);
  EXPECT_NEAR(full.entries(0, 3).real(), h, 1e-15);
  EXPECT_NEAR(full.entries(3, 0).real(), h, 1e-15);
  EXPECT_NEAR(full.entries(3, 3).real(), h, 1e-15);
  EXPECT_NEAR(frobenius_norm_squared(full.entries), 1.0, 1e-14);  // rank-one projector

  const DensityMatrix zeros = reduce_subset(PureState::basis(3, 0), std::vector<int>{2, 3});
  CMatrix expect(4, 4);
  expect(0, 0) = 1.0;
  EXPECT_EQ(max_abs_diff(zeros.entries, expect), 0.0);

  const PureState g = oracle::ghz(4);
  const DensityMatrix g12 = reduce_subset(g, std::vector<int>{1, 2});
  EXPECT_LT(max_abs_diff(g12.entries, oracle::partial_trace(g, {1, 2})), 1e-15);
  CMatrix ghz_expect(4, 4);
  ghz_expect(0, 0) = 0.5;
  ghz_expect(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(g12.entries, ghz_expect), 1e-15);
  EXPECT_EQ(g12.dims, (std::vector<int>{2, 2}));
}

TEST(ReduceSubset, RejectsBadSubsets) {
  const PureState s = PureState::basis(3, 0);
  for (const auto& bad : std::vector<std::vector<int>>{{}, {0}, {4}, {2, 1}, {1, 1}}) {
    try {
      reduce_subset(s, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::BadSubset);
    }
  }
}

TEST(ReduceSubset, PropertyMatchesOracle) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 4;
    const PureState s = haar_sample(n, 500 + trial);
    std::vector<int> subset;
    for (int k = 1; k <= n; ++k)
      if (gen() & 1U) subset.push_back(k);
    if (subset.empty()) subset.push_back(n);
    const DensityMatrix rho = reduce_subset(s, subset);
    EXPECT_LT(max_abs_diff(rho.entries, oracle::partial_trace(s, subset)), 1e-13);
    EXPECT_NEAR(rho.entries.trace().real(), 1.0, 1e-10);
    EXPECT_LE(hermiticity_defect(rho.entries), 1e-12);
  }
}

TEST(Eig2, Examples) {
  const Eig2 d = eig2(diag(0.3, 0.7));
  EXPECT_DOUBLE_EQ(d.lambda_small, 0.3);
  EXPECT_DOUBLE_EQ(d.lambda_large, 0.7);
  EXPECT_NEAR(std::abs(d.v_small[0] - 1.0), 0.0, 1e-15);
  EXPECT_EQ(std::abs(d.v_small[1]), 0.0);
  EXPECT_FALSE(d.degenerate);

  QubitDensity plus;
  plus.entries = Mat2{{{0.5, 0.5}, {0.5, 0.5}}};
  const Eig2 p = eig2(plus);
  EXPECT_NEAR(p.lambda_small, 0.0, 1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(p.v_small[0] - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.v_small[1] + r), 0.0, 1e-15);

  const Eig2 half = eig2(diag(0.5, 0.5));
  EXPECT_EQ(half.lambda_small, 0.5);
  EXPECT_TRUE(half.degenerate);
  EXPECT_EQ(half.v_small[0], Complex{1});
  EXPECT_EQ(half.v_large[1], Complex{1});
}

TEST(Eig2, PropertyReconstructionAndPhase) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> lam(0.0, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double l = trial == 0 ? 0.0 : lam(gen);
    const QubitDensity rho = oracle::rotated_density(l, gen);
    const Eig2 e = eig2(rho);
    EXPECT_NEAR(e.lambda_small, l, 1e-12);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const Complex rebuilt =
            e.lambda_small * e.v_small[r] * std::conj(e.v_small[c]) + e.lambda_large * e.v_large[r] * std::conj(e.v_large[c]);
        EXPECT_LT(std::abs(rebuilt - rho(r, c)), 1e-10);
      }
    for (const Vec2& v : {e.v_small, e.v_large}) {
      const Complex lead = std::abs(v[0]) > kPhaseThreshold ? v[0] : v[1];
      EXPECT_GE(lead.real(), 0.0);
      EXPECT_LT(std::abs(lead.imag()), 1e-15);
    }
  }
}

TEST(Eig2, RejectsInvalidDensity) {
  QubitDensity bad = diag(0.6, 0.6);
  EXPECT_THROW(eig2(bad), Error);
  bad = diag(1.2, -0.2);
  EXPECT_THROW(eig2(bad), Error);
  bad = diag(0.5, 0.5);
  bad.entries[0][1] = Complex{0.1, 0.0};
  EXPECT_THROW(eig2(bad), Error);
}

TEST(SchmidtSplit, Bell) {
  const SchmidtSplit s = schmidt_split_first(oracle::bell());
  EXPECT_NEAR(s.coeff0, 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.coeff1, 1 / std::sqrt(2.0), 1e-15);
  Complex overlap = std::conj(s.rest0[0]) * s.rest1[0] + std::conj(s.rest0[1]) * s.rest1[1];
  EXPECT_LT(std::abs(overlap), 1e-15);
  EXPECT_LT(distance(reassemble(s), oracle::bell().amplitudes()), 1e-15);
}

TEST(SchmidtSplit, ProductIsDegenerate) {
  const PureState rest = haar_sample(2, 4);
  std::vector<Complex> amps(8);
  for (std::size_t i = 0; i < 4; ++i) amps[i] = rest[i];
  const PureState s = validate_state(amps, 3);
  const SchmidtSplit split = schmidt_split_first(s);
  EXPECT_EQ(split.coeff0, 0.0);
  EXPECT_NEAR(split.coeff1, 1.0, 1e-15);
  EXPECT_TRUE(split.degenerate);
  EXPECT_LT(distance(reassemble(split), s.amplitudes()), 1e-12);
}

TEST(SchmidtSplit, NearProductReassemblesExactly) {
  // lambda_1 around 1e-14: inside the degeneracy window but not zero.
  const PureState a = haar_sample(2, 5);
  const PureState b = haar_sample(2, 6);
  const double eps = 1e-7;
  std::vector<Complex> amps(8);
  for (std::size_t i = 0; i < 4; ++i) {
    amps[i] = a[i];
    amps[4 + i] = eps * b[i];
  }
  const PureState s = PureState::normalized(3, amps);
  const SchmidtSplit split = schmidt_split_first(s);
  EXPECT_TRUE(split.degenerate);
  EXPECT_GT(split.coeff0, 0.0);
  EXPECT_LE(distance(reassemble(split), s.amplitudes()), 1e-10);
}

TEST(SchmidtSplit, ReassemblyProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const PureState s = haar_sample(n, seed);
    const SchmidtSplit split = schmidt_split_first(s);
    EXPECT_LE(split.coeff0, split.coeff1);
    EXPECT_NEAR(split.coeff0 * split.coeff0 + split.coeff1 * split.coeff1, 1.0, 1e-12);
    EXPECT_LE(distance(reassemble(split), s.amplitudes()), 1e-10);
    EXPECT_NEAR(split.coeff0 * split.coeff0, oracle::smaller_eigenvalue(oracle::partial_trace(s, {1})), 1e-12);
  }
}

TEST(SchmidtSplit, RejectsSingleQubit) {
  try {
    schmidt_split_first(PureState::basis(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingleQubit);
  }
}

TEST(PermuteQubits, Examples) {
  const PureState s = haar_sample(3, 1);
  const PureState same = permute_qubits(s, std::vector<int>{1, 2, 3});
  EXPECT_EQ(distance(same.amplitudes(), s.amplitudes()), 0.0);

  const PureState swapped = permute_qubits(PureState::basis(2, 0b01), std::vector<int>{2, 1});
  EXPECT_EQ(swapped[0b10], Complex{1});

  const PureState w = oracle::w3();
  std::mt19937_64 gen(0);
  for (int i = 0; i < 6; ++i)
    EXPECT_LT(distance(permute_qubits(w, random_perm(3, gen)).amplitudes(), w.amplitudes()), 1e-15);
}

TEST(PermuteQubits, CompositionProperty) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const PureState s = haar_sample(n, trial);
    const auto p1 = random_perm(n, gen);
    const auto p2 = random_perm(n, gen);
    std::vector<int> composed(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) composed[static_cast<std::size_t>(k)] = p2[static_cast<std::size_t>(p1[static_cast<std::size_t>(k)] - 1)];
    const PureState seq = permute_qubits(permute_qubits(s, p1), p2);
    EXPECT_EQ(distance(permute_qubits(s, composed).amplitudes(), seq.amplitudes()), 0.0);
    // Marginals travel with their qubit.
    for (int k = 1; k <= n; ++k) {
      const QubitDensity before = reduce_one_qubit(s, k);
      const QubitDensity after = reduce_one_qubit(permute_qubits(s, p1), p1[static_cast<std::size_t>(k - 1)]);
      EXPECT_LT(max_abs_diff(before.entries, after.entries), 1e-14);
    }
  }
}

TEST(PermuteQubits, RejectsNonPermutation) {
  const PureState s = PureState::basis(3, 0);
  for (const auto& bad : std::vector<std::vector<int>>{{1, 2}, {1, 1, 2}, {0, 1, 2}, {1, 2, 4}}) {
    try {
      permute_qubits(s, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotAPermutation);
    }
  }
}

TEST(LocalUnitary, Examples) {
  const PureState s = haar_sample(3, 2);
  EXPECT_EQ(distance(apply_local_unitary(s, 2, kIdentity2).amplitudes(), s.amplitudes()), 0.0);

  const Mat2 flip{{{0, 1}, {1, 0}}};
  const PureState one = apply_local_unitary(PureState::basis(1, 0), 1, flip);
  EXPECT_EQ(one[1], Complex{1});

  std::mt19937_64 gen(4);
  for (int i = 0; i < 10; ++i) {
    const PureState b = apply_local_unitary(oracle::bell(), 1, random_unitary(gen));
    const QubitDensity r2 = reduce_one_qubit(b, 2);
    EXPECT_LT(max_abs_diff(r2.entries, diag(0.5, 0.5).entries), 1e-15);
  }
}

TEST(LocalUnitary, ConjugatesTargetMarginalOnly) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const int k = 1 + trial % n;
    const PureState s = haar_sample(n, 40 + trial);
    const Mat2 u = random_unitary(gen);
    const PureState t = apply_local_unitary(s, k, u);
    const Mat2 expect = multiply(multiply(u, reduce_one_qubit(s, k).entries), adjoint(u));
    EXPECT_LT(max_abs_diff(reduce_one_qubit(t, k).entries, expect), 1e-13);
    for (int j = 1; j <= n; ++j)
      if (j != k) EXPECT_LT(max_abs_diff(reduce_one_qubit(t, j).entries, reduce_one_qubit(s, j).entries), 1e-13);
  }
}

TEST(LocalUnitary, RejectsNonUnitary) {
  const Mat2 bad{{{1, 0}, {0, 2}}};
  try {
    apply_local_unitary(PureState::basis(2, 0), 1, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnitary);
  }
}

TEST(HaarSample, DeterministicNormalizedAndFeasible) {
  const PureState a = haar_sample(3, 42);
  const PureState b = haar_sample(3, 42);
  EXPECT_EQ(distance(a.amplitudes(), b.amplitudes()), 0.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PureState s = haar_sample(4, seed);
    double norm = 0;
    for (const Complex& c : s.amplitudes()) norm += std::norm(c);
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_TRUE(check_polygon(Spectrum(one_qubit_spectrum(s))).feasible);
  }
}

TEST(Necessity, SmallSweepAgainstOracle) {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PureState s = haar_sample(n, 1000 * n + seed);
      std::vector<double> lambdas;
      for (int k = 1; k <= n; ++k) lambdas.push_back(oracle::smaller_eigenvalue(oracle::partial_trace(s, {k})));
      const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
      for (double l : lambdas) EXPECT_GE(total - 2 * l, -1e-12);
    }
  }
}
