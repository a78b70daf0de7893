#include "bsbl/kernels.hpp"

// Reference kernels. Plain loops over explicit re/im parts; these define the
// semantics the SIMD variants must reproduce up to reassociation.

namespace bsbl::kernels::detail {

namespace {

cplx cdotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void caxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {y[k].real() + ar * xr - ai * xi, y[k].imag() + ar * xi + ai * xr};
  }
}

double sumsq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += x[k] * x[k];
  return acc;
}

double diff_sumsq_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = x[k] - y[k];
    acc += d * d;
  }
  return acc;
}

}  // namespace

const KernelTable scalar_table = {cdotc_scalar, caxpy_scalar, sumsq_scalar,
                                  diff_sumsq_scalar};

}  // namespace bsbl::kernels::detail
