#include <doctest.h>

#include <complex>
#include <vector>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"
#include "bsbl/rng.hpp"

using bsbl::SplitMix64;
using bsbl::kernels::cplx;
namespace kd = bsbl::kernels::detail;

namespace {

std::vector<cplx> random_cvec(std::size_t n, SplitMix64& rng) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = rng.next_cgaussian();
  return v;
}

std::vector<double> random_dvec(std::size_t n, SplitMix64& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
  return v;
}

// long double reference, independent accumulation
cplx ref_cdotc(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  long double re = 0, im = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const long double xr = x[k].real(), xi = x[k].imag();
    const long double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

constexpr std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 33, 64, 100};

}  // namespace

TEST_CASE("scalar dot kernels match a long double reference") {
  SplitMix64 rng(11);
  for (std::size_t n : kSizes) {
    const auto x = random_cvec(n, rng);
    const auto y = random_cvec(n, rng);
    const cplx dc = kd::scalar_table.cdotc(x.data(), y.data(), n);
    const double tol = 1e-13 * (1.0 + static_cast<double>(n));
    CHECK(std::abs(dc - ref_cdotc(x, y)) <= tol);
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!bsbl::kernels::cpu_supports_avx2()) {
    MESSAGE("AVX2 unavailable, skipping equivalence checks");
    return;
  }
  const auto* avx = kd::avx2_table();
  REQUIRE(avx != nullptr);
  SplitMix64 rng(12);

  for (std::size_t n : kSizes) {
    const auto x = random_cvec(n, rng);
    const auto y = random_cvec(n, rng);
    const double scale = 1.0 + static_cast<double>(n);

    const cplx dc_s = kd::scalar_table.cdotc(x.data(), y.data(), n);
    const cplx dc_v = avx->cdotc(x.data(), y.data(), n);
    CHECK(std::abs(dc_s - dc_v) <= 1e-13 * scale);

    const cplx alpha = rng.next_cgaussian();
    auto ys = y, yv = y;
    kd::scalar_table.caxpy(alpha, x.data(), ys.data(), n);
    avx->caxpy(alpha, x.data(), yv.data(), n);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(ys[k] - yv[k]) <= 1e-14 * scale);

    const auto dx = random_dvec(2 * n + 1, rng);
    const auto dy = random_dvec(2 * n + 1, rng);
    CHECK(kd::scalar_table.sumsq(dx.data(), dx.size()) ==
          doctest::Approx(avx->sumsq(dx.data(), dx.size())).epsilon(1e-13));
    CHECK(kd::scalar_table.diff_sumsq(dx.data(), dy.data(), dx.size()) ==
          doctest::Approx(avx->diff_sumsq(dx.data(), dy.data(), dx.size()))
              .epsilon(1e-13));
  }
}

TEST_CASE("backend selection") {
  const auto original = bsbl::kernels::active_backend();
  bsbl::kernels::force_backend(bsbl::kernels::Backend::scalar);
  CHECK(bsbl::kernels::active_backend() == bsbl::kernels::Backend::scalar);
  if (bsbl::kernels::cpu_supports_avx2()) {
    bsbl::kernels::force_backend(bsbl::kernels::Backend::avx2);
    CHECK(bsbl::kernels::active_backend() == bsbl::kernels::Backend::avx2);
  } else {
    CHECK_THROWS_AS(bsbl::kernels::force_backend(bsbl::kernels::Backend::avx2),
                    bsbl::ConfigError);
  }
  bsbl::kernels::force_backend(original);
}
