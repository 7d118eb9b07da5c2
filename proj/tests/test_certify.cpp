#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "polyqubit/certify.hpp"
#include "polyqubit/error.hpp"

using namespace polyqubit;

TEST(Certificate, ProductStateIsTrivial) {
  const CertificateReport r = necessity_certificate(PureState::basis(3, 0b010), 1);
  EXPECT_TRUE(r.trivial);
  EXPECT_EQ(r.lambda, 0.0);
  EXPECT_TRUE(r.all_hold);
}

TEST(Certificate, Ghz3) {
  const CertificateReport r = necessity_certificate(oracle::ghz(3), 1);
  EXPECT_FALSE(r.trivial);
  EXPECT_NEAR(r.weight0, 0.5, 1e-12);
  EXPECT_NEAR(r.sum_others, 1.0, 1e-12);
  EXPECT_TRUE(r.all_hold);
  // Each cofactor sits on a single product-basis string.
  const auto nonzero = [](const std::vector<Complex>& v) {
    return std::count_if(v.begin(), v.end(), [](const Complex& c) { return std::abs(c) > 1e-12; });
  };
  EXPECT_EQ(nonzero(r.a_coeffs), 1);
  EXPECT_EQ(nonzero(r.b_coeffs), 1);
  for (const ChainCheck& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
}

TEST(Certificate, EveryQubitOfHaarStatesHolds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const PureState s = haar_sample(n, 7000 + seed);
    for (int k = 1; k <= n; ++k) {
      CertificateReport r;
      ASSERT_NO_THROW(r = necessity_certificate(s, k));
      EXPECT_TRUE(r.all_hold);
      EXPECT_LE(r.norm_a_residual, 1e-10);
      EXPECT_LE(r.norm_b_residual, 1e-10);
      EXPECT_LE(r.overlap_residual, 1e-10);
      EXPECT_LE(r.reconstruction_residual, 1e-10);
      EXPECT_NEAR(r.lambda, oracle::smaller_eigenvalue(oracle::partial_trace(s, {k})), 1e-12);
      // The other qubits' lambdas, rebuilt from weighted coefficient sums,
      // match an independent partial trace.
      for (std::size_t j = 0; j < r.others.size(); ++j)
        EXPECT_NEAR(r.lambdas_from_coeffs[j], oracle::smaller_eigenvalue(oracle::partial_trace(s, {r.others[j]})), 1e-10);
      EXPECT_GE(r.sum_others - r.lambda, -1e-9);
    }
  }
}

TEST(Certificate, ZeroCountsMatchIndexStrings) {
  const CertificateReport r = necessity_certificate(haar_sample(4, 3), 2);
  EXPECT_EQ(r.others, (std::vector<int>{1, 3, 4}));
  ASSERT_EQ(r.zero_counts.size(), 8u);
  EXPECT_EQ(r.zero_counts[0], 3);
  EXPECT_EQ(r.zero_counts[0b101], 1);
  EXPECT_EQ(r.zero_counts[7], 0);
}

TEST(Certificate, DegenerateMarginalsUseCanonicalBasis) {
  // GHZ4 has every marginal I/2.
  const CertificateReport r = necessity_certificate(oracle::ghz(4), 3);
  EXPECT_TRUE(r.all_hold);
  EXPECT_NEAR(r.lambda, 0.5, 1e-12);
}

TEST(Certificate, RejectsBadInput) {
  EXPECT_THROW(necessity_certificate(PureState::basis(1, 0), 1), Error);
  EXPECT_THROW(necessity_certificate(PureState::basis(3, 0), 4), Error);
}

TEST(Consistency, EmptyQAndRAgreeExactly) {
  const PureState s = haar_sample(4, 5);
  EXPECT_EQ(check_consistency(s, SubsetTriple{{1, 3}, {}, {}}).max_deviation, 0.0);
}

TEST(Consistency, Ghz4) {
  const PureState g = oracle::ghz(4);
  const ConsistencyReport r = check_consistency(g, SubsetTriple{{1}, {2}, {3}});
  EXPECT_LE(r.max_deviation, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(Consistency, AllTriplesOnHaarStates) {
  const auto triples = enumerate_triples(5, 3);
  ASSERT_FALSE(triples.empty());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PureState s = haar_sample(5, seed);
    for (const SubsetTriple& t : triples) EXPECT_TRUE(check_consistency(s, t).pass);
  }
}

TEST(Consistency, RejectsBadTriples) {
  const PureState s = haar_sample(3, 1);
  EXPECT_THROW(check_consistency(s, SubsetTriple{{}, {1}, {2}}), Error);
  EXPECT_THROW(check_consistency(s, SubsetTriple{{1}, {1}, {2}}), Error);
  EXPECT_THROW(check_consistency(s, SubsetTriple{{2, 1}, {}, {}}), Error);
  EXPECT_THROW(check_consistency(s, SubsetTriple{{4}, {}, {}}), Error);
}

TEST(EnumerateTriples, CountsAndShape) {
  // n = 2 by hand: P={1}: Q,R in {∅,{2}} -> 4; P={2}: 4; P={1,2}: 1.
  EXPECT_EQ(enumerate_triples(2, 2).size(), 9u);
  // With |P u Q| <= 1, Q must be empty: P singletons, R any submask of the rest.
  EXPECT_EQ(enumerate_triples(3, 1).size(), 3u * 4u);
  for (const SubsetTriple& t : enumerate_triples(4, 3)) {
    EXPECT_FALSE(t.P.empty());
    EXPECT_LE(t.P.size() + t.Q.size(), 3u);
  }
}
