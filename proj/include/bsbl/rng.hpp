#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace bsbl {

// Counter-free splittable generator. All randomness in the project flows
// through this type so that results are reproducible across platforms and
// independent of the standard library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Lemire reduction with rejection, exact.
  std::uint64_t next_below(std::uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<__uint128_t>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Standard circularly-symmetric complex Gaussian, E|x|^2 = 1.
  std::complex<double> next_cgaussian() {
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double r = std::sqrt(-std::log(u1));
    const double th = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  std::uint64_t state_;
};

// Derives an independent substream seed from a base seed and a path of
// indices (scenario, snr, trial, ...). Order-sensitive.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = base;
  for (std::uint64_t p : path) {
    h ^= p + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    SplitMix64 g(h);
    h = g.next();
  }
  return h;
}

}  // namespace bsbl
