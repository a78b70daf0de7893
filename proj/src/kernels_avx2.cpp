#include "bsbl/kernels.hpp"

// AVX2+FMA variants. Complex data is interleaved re/im, so one 256-bit
// register holds two complex doubles. Dot products keep two elementwise
// accumulators (x.*y and swap(x).*y) and combine even/odd lanes once at the
// end; this changes summation order relative to the scalar kernels, which is
// why equivalence is tested with a tolerance rather than bit-exactly.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace bsbl::kernels::detail {

namespace {

inline __m256d swap_reim(__m256d v) { return _mm256_permute_pd(v, 0x5); }

struct Lanes {
  double v[4];
};

inline Lanes store(__m256d r) {
  Lanes out;
  _mm256_storeu_pd(out.v, r);
  return out;
}

cplx cdotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  __m256d b0 = _mm256_setzero_pd(), b1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xv0 = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv0 = _mm256_loadu_pd(yd + 2 * k);
    const __m256d xv1 = _mm256_loadu_pd(xd + 2 * k + 4);
    const __m256d yv1 = _mm256_loadu_pd(yd + 2 * k + 4);
    a0 = _mm256_fmadd_pd(xv0, yv0, a0);
    a1 = _mm256_fmadd_pd(xv1, yv1, a1);
    b0 = _mm256_fmadd_pd(swap_reim(xv0), yv0, b0);
    b1 = _mm256_fmadd_pd(swap_reim(xv1), yv1, b1);
  }
  const Lanes a = store(_mm256_add_pd(a0, a1));
  const Lanes b = store(_mm256_add_pd(b0, b1));
  // a lanes: xr*yr | xi*yi, b lanes: xi*yr | xr*yi
  double re = (a.v[0] + a.v[1]) + (a.v[2] + a.v[3]);
  double im = (b.v[1] - b.v[0]) + (b.v[3] - b.v[2]);
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

inline void caxpy_body(double ar, double ai, const double* xd, double* yd,
                       std::size_t pairs) {
  const __m256d vr = _mm256_set1_pd(ar);
  const __m256d vi = _mm256_set1_pd(ai);
  std::size_t k = 0;
  for (; k + 2 <= pairs; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    const __m256d t = _mm256_mul_pd(vi, swap_reim(xv));
    // even lane: ar*xr - ai*xi, odd lane: ar*xi + ai*xr
    const __m256d axv = _mm256_fmaddsub_pd(vr, xv, t);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(yv, axv));
  }
  for (; k < pairs; ++k) {
    const double xr = xd[2 * k], xi = xd[2 * k + 1];
    yd[2 * k] += ar * xr - ai * xi;
    yd[2 * k + 1] += ar * xi + ai * xr;
  }
}

void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  caxpy_body(a.real(), a.imag(), reinterpret_cast<const double*>(x),
             reinterpret_cast<double*>(y), n);
}

double sumsq_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + k);
    const __m256d v1 = _mm256_loadu_pd(x + k + 4);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
    a1 = _mm256_fmadd_pd(v1, v1, a1);
  }
  const Lanes a = store(_mm256_add_pd(a0, a1));
  double acc = (a.v[0] + a.v[1]) + (a.v[2] + a.v[3]);
  for (; k < n; ++k) acc += x[k] * x[k];
  return acc;
}

double diff_sumsq_avx2(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(x + k + 4), _mm256_loadu_pd(y + k + 4));
    a0 = _mm256_fmadd_pd(d0, d0, a0);
    a1 = _mm256_fmadd_pd(d1, d1, a1);
  }
  const Lanes a = store(_mm256_add_pd(a0, a1));
  double acc = (a.v[0] + a.v[1]) + (a.v[2] + a.v[3]);
  for (; k < n; ++k) {
    const double d = x[k] - y[k];
    acc += d * d;
  }
  return acc;
}

const KernelTable avx2_table_impl = {cdotc_avx2, caxpy_avx2, sumsq_avx2,
                                     diff_sumsq_avx2};

}  // namespace

const KernelTable* avx2_table() { return &avx2_table_impl; }

}  // namespace bsbl::kernels::detail

#else  // non-x86 build: scalar only

namespace bsbl::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace bsbl::kernels::detail

#endif
