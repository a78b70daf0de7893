#pragma once

#include <cstddef>
#include <vector>

#include "bsbl/defaults.hpp"
#include "bsbl/hyperprior.hpp"

namespace bsbl {

// Lower-triangular band matrix over pairs (i, j) with 0 < i - j <= window.
// Backs the splitting variable C and the duals lambda.
class BandLower {
 public:
  BandLower() = default;
  BandLower(std::size_t n, std::size_t window)
      : n_(n), w_(window), v_(window * n, 0.0) {}

  double at(std::size_t i, std::size_t j) const { return v_[idx(i, j)]; }
  double& at(std::size_t i, std::size_t j) { return v_[idx(i, j)]; }

  std::size_t n() const { return n_; }
  std::size_t window() const { return w_; }

  template <typename F>
  void for_each_pair(F&& f) const {
    for (std::size_t d = 1; d <= w_; ++d)
      for (std::size_t i = d; i < n_; ++i) f(i, i - d, v_[(d - 1) * n_ + i]);
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j) const {
    const std::size_t d = i - j;  // caller guarantees i > j and d <= window
    return (d - 1) * n_ + i;
  }

  std::size_t n_ = 0, w_ = 0;
  std::vector<double> v_;
};

// Working set of one M-step: the hyper-parameters being optimized, the
// splitting variable, the duals, and the fixed penalty weight. C and lambda
// persist across outer iterations as warm starts.
struct AdmmState {
  std::vector<double> gamma;
  BandLower C;
  BandLower lambda;
  double rho = defaults::rho;
  int t = 0;

  static AdmmState init(std::vector<double> gamma0, std::size_t window,
                        double rho);
};

// How the per-index gamma subproblem is solved inside the sweep. The closed
// form divides by an approximate denominator that is biased away from 1 on
// near-constant gamma regions (it carries a (1 - log gamma) factor), which
// compounds across outer iterations and suppresses isolated active rows. The
// exact mode minimizes the scalar objective itself (golden section over
// log gamma, with the analytic gamma = s solution whenever every coupling
// weight at the index is zero) and has no such bias.
enum class GammaStep { exact, closed_form };

struct MStepOptions {
  std::size_t m_count = 1;  // number of measurement vectors, scales the prox
  int t_max = defaults::t_max;
  double eps_inner = defaults::eps_inner;
  double gamma_floor = defaults::gamma_floor;
  double gamma_cap = defaults::gamma_cap;
  double denom_floor = defaults::denom_floor;
  GammaStep gamma_step = GammaStep::exact;
};

struct MStepReport {
  int iterations = 0;
  double residual_first = 0.0;  // max |C - gamma_bar| after the first sweep
  double residual_exit = 0.0;
  double gamma_min = 0.0;  // over every iterate produced by the loop
  double gamma_max = 0.0;
};

inline double soft_threshold(double a, double kappa) {
  const double m = std::abs(a) - kappa;
  return m > 0.0 ? (a < 0.0 ? -m : m) : 0.0;
}

// One Gauss-Seidel sweep of the closed-form update, ascending index order,
// already-updated values feeding the later entries. Results are clamped into
// [gamma_floor, gamma_cap]; a denominator at or below denom_floor is replaced
// by denom_floor.
std::vector<double> gamma_update(const AdmmState& state,
                                 const std::vector<double>& s,
                                 const CouplingState& coupling,
                                 const NeighborhoodMap& nbrs,
                                 const MStepOptions& opts);

// Same sweep with the exact scalar minimizer at each index. Indices whose
// coupling row is entirely zero take the analytic solution gamma_i = s_i.
std::vector<double> gamma_update_exact(const AdmmState& state,
                                       const std::vector<double>& s,
                                       const CouplingState& coupling,
                                       const NeighborhoodMap& nbrs,
                                       const MStepOptions& opts);

// Proximal step: per banded pair, shrink gamma_bar - lambda/rho by 1/(M rho).
BandLower c_update(const AdmmState& state, const std::vector<double>& gamma_new,
                   const CouplingState& coupling, std::size_t m_count);

BandLower lambda_update(const AdmmState& state, const BandLower& c_new,
                        const std::vector<double>& gamma_new,
                        const CouplingState& coupling);

double primal_residual(const BandLower& c, const std::vector<double>& gamma,
                       const CouplingState& coupling);

// Full inner loop: gamma / C / lambda updates until the squared gamma change
// drops to eps_inner or t_max sweeps elapse. With an empty band the update
// has a one-sweep fixed point and the loop exits after a single iteration.
MStepReport run_mstep(AdmmState& state, const std::vector<double>& s,
                      const CouplingState& coupling,
                      const NeighborhoodMap& nbrs, const MStepOptions& opts);

// Golden-section minimizer of the exact scalar subproblem at index i, over
// log gamma in [log gamma_floor, log gamma_cap]. Diagnostic companion to the
// closed-form update; neighbor values are taken from state.gamma as-is.
double exact_gamma_oracle(std::size_t i, const AdmmState& state,
                          const std::vector<double>& s,
                          const CouplingState& coupling,
                          const NeighborhoodMap& nbrs,
                          const MStepOptions& opts);

}  // namespace bsbl
