#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "polyqubit/linalg.hpp"

using namespace polyqubit;

namespace {

CMatrix random_hermitian(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = g(gen);
    for (std::size_t c = r + 1; c < dim; ++c) {
      m(r, c) = Complex{g(gen), g(gen)};
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

}  // namespace

TEST(Linalg, Mat2MultiplyAndAdjoint) {
  const Mat2 a{{{Complex{1, 2}, Complex{0, 1}}, {Complex{3, 0}, Complex{-1, -1}}}};
  EXPECT_EQ(max_abs_diff(multiply(a, kIdentity2), a), 0.0);
  const Mat2 aa = adjoint(a);
  EXPECT_EQ(aa[0][1], std::conj(a[1][0]));
  EXPECT_EQ(max_abs_diff(adjoint(aa), a), 0.0);
}

TEST(Linalg, FromColumns) {
  const Mat2 m = from_columns({Complex{1}, Complex{2}}, {Complex{3}, Complex{4}});
  EXPECT_EQ(m[0][0], Complex{1});
  EXPECT_EQ(m[1][0], Complex{2});
  EXPECT_EQ(m[0][1], Complex{3});
  EXPECT_EQ(m[1][1], Complex{4});
}

TEST(Linalg, MatrixBasics) {
  const CMatrix id = CMatrix::identity(3);
  EXPECT_EQ(id.trace(), Complex{3});
  EXPECT_EQ(frobenius_norm_squared(id), 3.0);
  EXPECT_EQ(max_abs_diff(id * id, id), 0.0);
  EXPECT_EQ(frobenius_norm_squared(id - id), 0.0);
  CMatrix m(2, 2);
  m(0, 1) = Complex{0, 1};
  EXPECT_DOUBLE_EQ(hermiticity_defect(m), 1.0);
  EXPECT_EQ(m.adjoint()(1, 0), Complex(0, -1));
}

TEST(Linalg, JacobiDiagonal) {
  CMatrix m(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.2;
  m(2, 2) = 0.3;
  const HermitianEigen e = hermitian_eigen(m);
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_DOUBLE_EQ(e.values[0], 0.2);
  EXPECT_DOUBLE_EQ(e.values[1], 0.3);
  EXPECT_DOUBLE_EQ(e.values[2], 0.5);
}

TEST(Linalg, JacobiReconstructsRandomHermitian) {
  std::mt19937_64 gen(11);
  for (std::size_t dim : {2u, 3u, 4u, 6u, 9u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix a = random_hermitian(dim, gen);
      const HermitianEigen e = hermitian_eigen(a);
      for (std::size_t i = 1; i < dim; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
      CMatrix d(dim, dim);
      for (std::size_t i = 0; i < dim; ++i) d(i, i) = e.values[i];
      EXPECT_LT(max_abs_diff(e.vectors * d * e.vectors.adjoint(), a), 1e-10);
      EXPECT_LT(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(dim)), 1e-10);
      double trace = 0;
      for (double v : e.values) trace += v;
      EXPECT_NEAR(trace, a.trace().real(), 1e-10);
    }
  }
}

TEST(Linalg, JacobiTwoByTwoClosedForm) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_hermitian(2, gen);
    const double p = a(0, 0).real(), q = a(1, 1).real();
    const double r = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(a(0, 1)));
    const HermitianEigen e = hermitian_eigen(a);
    EXPECT_NEAR(e.values[0], 0.5 * (p + q) - r, 1e-12);
    EXPECT_NEAR(e.values[1], 0.5 * (p + q) + r, 1e-12);
  }
}
