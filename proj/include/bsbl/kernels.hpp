#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops shared by the dense linear algebra and the
// metric computations. Each kernel has a scalar reference implementation
// and (on x86-64) an AVX2+FMA variant; the active backend is picked once at
// runtime from CPUID and can be overridden for testing via force_backend()
// or the BSBL_KERNELS environment variable ("scalar" or "avx2").
//
// The two backends are equivalence-tested against each other; they may
// differ by floating-point reassociation only.

namespace bsbl::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

struct KernelTable {
  // sum_k conj(x[k]) * y[k]
  cplx (*cdotc)(const cplx* x, const cplx* y, std::size_t n);
  // y[k] += a * x[k]
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_k x[k]^2
  double (*sumsq)(const double* x, std::size_t n);
  // sum_k (x[k] - y[k])^2
  double (*diff_sumsq)(const double* x, const double* y, std::size_t n);
};

namespace detail {
extern const KernelTable scalar_table;
// Null when the build target or the running CPU cannot execute AVX2+FMA.
const KernelTable* avx2_table();
}  // namespace detail

bool cpu_supports_avx2();
Backend active_backend();
// Throws ConfigError if the requested backend is unavailable on this CPU.
void force_backend(Backend b);
std::string backend_name(Backend b);

const KernelTable& active();

inline cplx cdotc(const cplx* x, const cplx* y, std::size_t n) {
  return active().cdotc(x, y, n);
}
inline void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  active().caxpy(a, x, y, n);
}
inline double sumsq(const double* x, std::size_t n) {
  return active().sumsq(x, n);
}
// |x|^2 summed over a complex array, treated as 2n reals.
inline double sumsq(const cplx* x, std::size_t n) {
  return active().sumsq(reinterpret_cast<const double*>(x), 2 * n);
}
inline double diff_sumsq(const double* x, const double* y, std::size_t n) {
  return active().diff_sumsq(x, y, n);
}
inline double diff_sumsq(const cplx* x, const cplx* y, std::size_t n) {
  return active().diff_sumsq(reinterpret_cast<const double*>(x),
                             reinterpret_cast<const double*>(y), 2 * n);
}

}  // namespace bsbl::kernels
