#pragma once

// Small dense complex linear algebra: fixed 2x2 helpers for one-qubit work and
// a row-major square matrix with a cyclic Jacobi eigensolver for marginals of
// larger subsystems.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polyqubit {

using Complex = std::complex<double>;
using Vec2 = std::array<Complex, 2>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

inline constexpr Mat2 kIdentity2{{{Complex{1.0, 0.0}, Complex{0.0, 0.0}},
                                  {Complex{0.0, 0.0}, Complex{1.0, 0.0}}}};

Mat2 multiply(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);
double max_abs_diff(const Mat2& a, const Mat2& b);

// Matrix whose columns are `first` and `second`.
Mat2 from_columns(const Vec2& first, const Vec2& second);

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t dim);
  static CMatrix zero(std::size_t dim) { return CMatrix(dim, dim); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Complex trace() const;
  CMatrix adjoint() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_norm_squared(const CMatrix& a);
// max |A(r,c) - conj(A(c,r))|
double hermiticity_defect(const CMatrix& a);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column j pairs with values[j]
  int sweeps = 0;
};

// Cyclic complex Jacobi rotations until the off-diagonal Frobenius norm drops
// below `tolerance` (absolute). Input must be square; only the Hermitian part
// is meaningful.
HermitianEigen hermitian_eigen(const CMatrix& a, double tolerance = 1e-12, int max_sweeps = 100);

}  // namespace polyqubit
