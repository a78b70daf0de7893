#include "bsbl/linalg.hpp"

#include <cmath>
#include <string>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"

namespace bsbl {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool CMatrix::all_finite() const {
  for (const cplx& v : d_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double CMatrix::frobenius_sq() const {
  return kernels::sumsq(d_.data(), d_.size());
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw ConfigError("matmul: inner dimensions disagree (" +
                      std::to_string(a.cols()) + " vs " +
                      std::to_string(b.rows()) + ")");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      kernels::caxpy(a(i, k), b.row(k), c.row(i), b.cols());
  return c;
}

CMatrix adjoint_matmul(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows())
    throw ConfigError("adjoint_matmul: row counts disagree (" +
                      std::to_string(a.rows()) + " vs " +
                      std::to_string(b.rows()) + ")");
  CMatrix c(a.cols(), b.cols());
  for (std::size_t l = 0; l < a.rows(); ++l)
    for (std::size_t i = 0; i < a.cols(); ++i)
      kernels::caxpy(std::conj(a(l, i)), b.row(l), c.row(i), b.cols());
  return c;
}

Cholesky::Cholesky(const CMatrix& h) : l_(h.rows(), h.cols()) {
  if (h.rows() != h.cols())
    throw ConfigError("cholesky: matrix is not square");
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ri = l_.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      const cplx* rj = l_.row(j);
      // sum_k L(i,k) conj(L(j,k)) over the shared prefix
      const cplx s = kernels::cdotc(rj, ri, j);
      ri[j] = (h(i, j) - s) / l_(j, j).real();
    }
    const double p = h(i, i).real() - kernels::sumsq(ri, i);
    if (!(p > 0.0) || !std::isfinite(p))
      throw NumericError("cholesky: non-positive pivot at row " +
                         std::to_string(i));
    ri[i] = std::sqrt(p);
  }
}

double Cholesky::logdet() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < l_.rows(); ++i)
    acc += std::log(l_(i, i).real());
  return 2.0 * acc;
}

CMatrix Cholesky::solve(const CMatrix& b) const {
  const std::size_t n = l_.rows();
  if (b.rows() != n) throw ConfigError("cholesky solve: dimension mismatch");
  const std::size_t m = b.cols();
  CMatrix x = b;
  // forward: L z = b, panel updates keep the right-hand sides contiguous
  for (std::size_t k = 0; k < n; ++k) {
    const double inv = 1.0 / l_(k, k).real();
    cplx* rk = x.row(k);
    for (std::size_t j = 0; j < m; ++j) rk[j] *= inv;
    for (std::size_t i = k + 1; i < n; ++i)
      kernels::caxpy(-l_(i, k), rk, x.row(i), m);
  }
  // backward: L^H x = z; row k of L holds the conjugates of column k of L^H
  for (std::size_t k = n; k-- > 0;) {
    const double inv = 1.0 / l_(k, k).real();
    cplx* rk = x.row(k);
    for (std::size_t j = 0; j < m; ++j) rk[j] *= inv;
    const cplx* lk = l_.row(k);
    for (std::size_t i = 0; i < k; ++i)
      kernels::caxpy(-std::conj(lk[i]), rk, x.row(i), m);
  }
  return x;
}

CMatrix Cholesky::inverse() const {
  const std::size_t n = l_.rows();
  // W = L^{-1}, lower triangular, accumulated row by row
  CMatrix w(n, n);
  std::vector<cplx> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.begin() + i, cplx{});
    for (std::size_t k = 0; k < i; ++k)
      kernels::caxpy(l_(i, k), w.row(k), acc.data(), k + 1);
    const double inv = 1.0 / l_(i, i).real();
    cplx* wi = w.row(i);
    for (std::size_t j = 0; j < i; ++j) wi[j] = -acc[j] * inv;
    wi[i] = inv;
  }
  // U = W^H (upper triangular, rows contiguous), then H^{-1} = W^H W = U U^H
  CMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k) u(i, k) = std::conj(w(k, i));
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* ui = u.row(i) + i;
    out(i, i) = kernels::sumsq(ui, n - i);
    for (std::size_t j = 0; j < i; ++j) {
      // sum_{k>=i} U(i,k) conj(U(j,k))
      const cplx s = std::conj(kernels::cdotc(ui, u.row(j) + i, n - i));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  }
  return out;
}

}  // namespace bsbl
