#include "bsbl/hyperprior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsbl/errors.hpp"

namespace bsbl {

NeighborhoodMap build_neighborhoods(std::size_t n, std::size_t window) {
  if (n == 0) throw ConfigError("neighborhoods: N must be >= 1");
  if (window >= n)
    throw ConfigError("neighborhoods: window " + std::to_string(window) +
                      " must be < N=" + std::to_string(n));
  NeighborhoodMap map;
  map.n = n;
  map.window = window;
  map.neighbors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(n - 1, i + window);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j != i) map.neighbors[i].push_back(j);
  }
  return map;
}

CouplingState::CouplingState(std::size_t n, std::size_t window, bool normalized)
    : n_(n),
      w_(static_cast<std::ptrdiff_t>(window)),
      normalized_(normalized),
      band_(n * (2 * window + 1), 0.0) {}

void CouplingState::set(std::size_t i, std::size_t j, double v) {
  const std::ptrdiff_t d =
      static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
  band_[i * width() + static_cast<std::size_t>(d + w_)] = v;
}

CouplingState CouplingState::fixed(const NeighborhoodMap& nbrs, double value) {
  if (value < 0.0 || value > 1.0)
    throw ConfigError("coupling: fixed beta must lie in [0,1]");
  CouplingState c(nbrs.n, nbrs.window, false);
  for (std::size_t i = 0; i < nbrs.n; ++i)
    for (std::size_t j : nbrs.neighbors[i]) c.set(i, j, value);
  return c;
}

CouplingState update_beta(const std::vector<double>& gamma_prev,
                          const NeighborhoodMap& nbrs, bool normalize,
                          double gamma_floor) {
  if (gamma_prev.size() != nbrs.n)
    throw ConfigError("update_beta: gamma length does not match N");
  std::vector<double> lg(nbrs.n);
  for (std::size_t i = 0; i < nbrs.n; ++i)
    lg[i] = std::log(std::max(gamma_prev[i], gamma_floor));

  CouplingState c(nbrs.n, nbrs.window, normalize);
  for (std::size_t i = 0; i < nbrs.n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j : nbrs.neighbors[i]) {
      const double d = lg[i] - lg[j];
      const double b = std::exp(-d * d);
      c.set(i, j, b);
      row_sum += b;
    }
    if (normalize && !nbrs.neighbors[i].empty() && row_sum > 0.0) {
      for (std::size_t j : nbrs.neighbors[i]) c.set(i, j, c(i, j) / row_sum);
    }
  }
  return c;
}

double penalty_value(const std::vector<double>& gamma,
                     const CouplingState& coupling, double gamma_floor) {
  if (gamma.size() != coupling.n())
    throw ConfigError("penalty_value: gamma length does not match coupling");
  std::vector<double> lg(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i)
    lg[i] = std::log(std::max(gamma[i], gamma_floor));
  const std::size_t w = coupling.window();
  double acc = 0.0;
  for (std::size_t i = 1; i < gamma.size(); ++i) {
    const std::size_t lo = i >= w ? i - w : 0;
    for (std::size_t j = lo; j < i; ++j)
      acc += coupling(i, j) * std::abs(lg[i] - lg[j]);
  }
  return acc;
}

}  // namespace bsbl
