#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bsbl {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Row-major keeps the factorization and
// triangular-solve inner loops contiguous for the kernels.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), d_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return d_.size(); }

  cplx* row(std::size_t i) { return d_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return d_.data() + i * cols_; }
  cplx* data() { return d_.data(); }
  const cplx* data() const { return d_.data(); }

  cplx& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return d_[i * cols_ + j];
  }

  bool operator==(const CMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }

  bool all_finite() const;
  double frobenius_sq() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> d_;
};

CMatrix adjoint(const CMatrix& a);
// c = a * b
CMatrix matmul(const CMatrix& a, const CMatrix& b);
// c = a^H * b without forming the adjoint
CMatrix adjoint_matmul(const CMatrix& a, const CMatrix& b);

// Cholesky factorization H = L L^H of a Hermitian positive definite matrix.
// Only the lower triangle and the real part of the diagonal of the input are
// read. Throws NumericError when a pivot is not strictly positive.
class Cholesky {
 public:
  explicit Cholesky(const CMatrix& h);

  const CMatrix& factor() const { return l_; }
  double logdet() const;  // of H, not of L

  // Solves H X = B for multiple right-hand sides.
  CMatrix solve(const CMatrix& b) const;
  // Full inverse, Hermitian by construction (real diagonal, mirrored
  // off-diagonal entries).
  CMatrix inverse() const;

 private:
  CMatrix l_;
};

}  // namespace bsbl
