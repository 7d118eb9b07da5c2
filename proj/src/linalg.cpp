#include "polyqubit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyqubit/error.hpp"

namespace polyqubit {

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
  return out;
}

Mat2 adjoint(const Mat2& a) {
  Mat2 out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = std::conj(a[c][r]);
  return out;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double worst = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(a[r][c] - b[r][c]));
  return worst;
}

Mat2 from_columns(const Vec2& first, const Vec2& second) {
  return Mat2{{{first[0], second[0]}, {first[1], second[1]}}};
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

Complex CMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::WrongSize, "matrix product shape mismatch");
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex s = a(r, k);
      if (s == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += s * b(k, c);
    }
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorKind::WrongSize, "matrix difference shape mismatch");
  CMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::WrongSize, "matrix comparison shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

double frobenius_norm_squared(const CMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.data()) sum += std::norm(z);
  return sum;
}

double hermiticity_defect(const CMatrix& a) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
  return worst;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) sum += std::norm(a(r, c));
  return std::sqrt(sum);
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& input, double tolerance, int max_sweeps) {
  if (input.rows() != input.cols()) throw Error(ErrorKind::WrongSize, "eigensolver needs a square matrix");
  const std::size_t dim = input.rows();

  // Work on the Hermitian part so tiny asymmetries in the input cannot stall convergence.
  CMatrix a(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));
  CMatrix v = CMatrix::identity(dim);

  int sweep = 0;
  for (; sweep < max_sweeps && off_diagonal_norm(a) > tolerance; ++sweep) {
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag < 1e-300) continue;
        const Complex phase = g / mag;  // e^{i alpha}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Rotation J acting on (p, q): J = D * R with D = diag(1, conj(phase)).
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < dim; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  out.sweeps = sweep;
  out.values.reserve(dim);
  out.vectors = CMatrix(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    out.values.push_back(a(order[j], order[j]).real());
    for (std::size_t r = 0; r < dim; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

}  // namespace polyqubit
