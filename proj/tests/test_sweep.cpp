#include <gtest/gtest.h>

#include "polyqubit/sweep.hpp"

using namespace polyqubit;

TEST(NecessitySweep, SerialEqualsParallel) {
  SweepOptions opt;
  opt.certify = true;
  opt.keep_spectra = true;
  const NecessitySweep p = necessity_sweep(5, 300, 4, opt);
  opt.parallel = false;
  const NecessitySweep s = necessity_sweep(5, 300, 4, opt);
  EXPECT_EQ(p.min_slack, s.min_slack);
  EXPECT_EQ(p.worst_sample, s.worst_sample);
  EXPECT_EQ(p.worst_qubit, s.worst_qubit);
  EXPECT_EQ(p.spectra, s.spectra);
  EXPECT_EQ(p.max_identity_residual, s.max_identity_residual);
  EXPECT_EQ(p.certificates, 5u * 300u);
  EXPECT_EQ(p.polygon_violations, 0u);
  EXPECT_EQ(p.certificate_violations, 0u);
  EXPECT_EQ(p.failures, 0u);
  EXPECT_GE(p.min_slack, -kNecessitySlack);
}

TEST(NecessitySweep, TwoQubitSpectraAreEqualPairs) {
  SweepOptions opt;
  opt.keep_spectra = true;
  const NecessitySweep r = necessity_sweep(2, 100, 9, opt);
  ASSERT_EQ(r.spectra.size(), 100u);
  for (const auto& s : r.spectra) EXPECT_NEAR(s[0], s[1], 1e-10);
  EXPECT_LE(r.max_pair_gap, 1e-10);
}

TEST(SufficiencySweep, SerialEqualsParallelAndExact) {
  const SufficiencySweep p = sufficiency_sweep(6, 200, 2, true);
  const SufficiencySweep s = sufficiency_sweep(6, 200, 2, false);
  EXPECT_EQ(p.max_error, s.max_error);
  EXPECT_EQ(p.mean_acceptance, s.mean_acceptance);
  EXPECT_EQ(p.failures, 0u);
  EXPECT_LE(p.max_error, 1e-10);
  EXPECT_LE(p.max_offdiagonal, 1e-12);
  EXPECT_LE(p.max_chi_residual, 1e-12);
}

TEST(SufficiencySweep, SmallCounts) {
  for (int n = 1; n <= 3; ++n) {
    const SufficiencySweep r = sufficiency_sweep(n, 50, 1);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_LE(r.max_error, 1e-10);
  }
}
