#pragma once

#include <cstddef>
#include <vector>

#include "bsbl/defaults.hpp"

namespace bsbl {

// Banded symmetric neighborhoods: j is a neighbor of i iff 0 < |i-j| <= window.
struct NeighborhoodMap {
  std::size_t n = 0;
  std::size_t window = 0;
  std::vector<std::vector<std::size_t>> neighbors;  // ascending per index

  bool empty_band() const { return window == 0 || n < 2; }
};

NeighborhoodMap build_neighborhoods(std::size_t n, std::size_t window);

// Coupling weights on the band. Stored densely per row over offsets
// [-window, +window]; zero off the band by construction.
class CouplingState {
 public:
  CouplingState() = default;
  CouplingState(std::size_t n, std::size_t window, bool normalized);

  static CouplingState fixed(const NeighborhoodMap& nbrs, double value);

  double operator()(std::size_t i, std::size_t j) const {
    const std::ptrdiff_t d =
        static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
    if (d == 0 || d < -w_ || d > w_) return 0.0;
    return band_[i * width() + static_cast<std::size_t>(d + w_)];
  }

  void set(std::size_t i, std::size_t j, double v);

  std::size_t n() const { return n_; }
  std::size_t window() const { return static_cast<std::size_t>(w_); }
  bool normalized() const { return normalized_; }

 private:
  std::size_t width() const { return static_cast<std::size_t>(2 * w_ + 1); }

  std::size_t n_ = 0;
  std::ptrdiff_t w_ = 0;
  bool normalized_ = false;
  std::vector<double> band_;
};

// beta_ij = exp(-(log gamma_i - log gamma_j)^2) on the band. With normalize
// set, each row with a nonempty neighborhood is divided by its sum.
CouplingState update_beta(const std::vector<double>& gamma_prev,
                          const NeighborhoodMap& nbrs, bool normalize,
                          double gamma_floor = defaults::gamma_floor);

// sum over banded pairs (i > j) of beta_ij |log gamma_i - log gamma_j|
double penalty_value(const std::vector<double>& gamma,
                     const CouplingState& coupling,
                     double gamma_floor = defaults::gamma_floor);

}  // namespace bsbl
