#include "bsbl/engine.hpp"

#include <algorithm>
#include <cmath>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"

namespace bsbl {

SolverConfig SolverConfig::normalized() const {
  SolverConfig c = *this;
  switch (c.variant) {
    case Variant::m_sbl:
      c.window = 0;
      break;
    case Variant::msbl_dol:
      c.window = 1;
      c.beta_mode = BetaMode::fixed;
      c.warmup_iterations = 0;  // fixed weights have nothing to differentiate
      break;
    case Variant::proposed:
      break;
  }
  if (c.warmup_iterations < 0)
    throw ConfigError("solver: warmup_iterations must be >= 0");
  if (c.k_max < 1) throw ConfigError("solver: k_max must be >= 1");
  if (c.t_max < 1) throw ConfigError("solver: t_max must be >= 1");
  if (!(c.eps_outer > 0.0) || !(c.eps_inner > 0.0))
    throw ConfigError("solver: tolerances must be positive");
  if (!(c.rho > 0.0)) throw ConfigError("solver: rho must be positive");
  if (!(c.gamma_floor > 0.0) || !(c.gamma_cap > c.gamma_floor))
    throw ConfigError("solver: need 0 < gamma_floor < gamma_cap");
  if (!(c.denom_floor > 0.0))
    throw ConfigError("solver: denom_floor must be positive");
  if (!(c.gamma_init >= c.gamma_floor) || !(c.gamma_init <= c.gamma_cap))
    throw ConfigError("solver: gamma_init must lie in [gamma_floor, gamma_cap]");
  if (c.beta_mode == BetaMode::fixed &&
      (c.fixed_beta < 0.0 || c.fixed_beta > 1.0))
    throw ConfigError("solver: fixed_beta must lie in [0,1]");
  return c;
}

Variant variant_from_string(const std::string& name) {
  if (name == "proposed") return Variant::proposed;
  if (name == "m_sbl") return Variant::m_sbl;
  if (name == "msbl_dol") return Variant::msbl_dol;
  throw ConfigError("unknown variant \"" + name + "\"");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::proposed: return "proposed";
    case Variant::m_sbl: return "m_sbl";
    case Variant::msbl_dol: return "msbl_dol";
  }
  return "?";
}

SolverResult run(const Problem& problem, const SolverConfig& config) {
  const SolverConfig cfg = config.normalized();
  problem.validate();
  const std::size_t n = problem.n();
  if (cfg.window >= n)
    throw ConfigError("solver: window must be < N");

  const PosteriorSolver posterior(problem, cfg.gamma_floor);
  const NeighborhoodMap nbrs = build_neighborhoods(n, cfg.window);
  const CouplingState fixed_coupling =
      cfg.beta_mode == BetaMode::fixed
          ? CouplingState::fixed(nbrs, cfg.fixed_beta)
          : CouplingState(n, cfg.window, false);

  MStepOptions mopts;
  mopts.m_count = problem.m();
  mopts.t_max = cfg.t_max;
  mopts.eps_inner = cfg.eps_inner;
  mopts.gamma_floor = cfg.gamma_floor;
  mopts.gamma_cap = cfg.gamma_cap;
  mopts.denom_floor = cfg.denom_floor;
  mopts.gamma_step = cfg.gamma_step;

  AdmmState state = AdmmState::init(
      std::vector<double>(n, cfg.gamma_init), cfg.window, cfg.rho);

  SolverResult result;
  CMatrix mu_prev;
  bool have_prev = false;

  for (int k = 1; k <= cfg.k_max; ++k) {
    PosteriorState post;
    try {
      post = posterior.update(state.gamma);
      result.objective_trace.push_back(
          marginal_objective(problem, state.gamma, cfg.gamma_floor));
      const bool warmup = k <= cfg.warmup_iterations;
      const CouplingState coupling =
          warmup ? CouplingState(n, cfg.window, false)
          : cfg.beta_mode == BetaMode::adaptive
              ? update_beta(state.gamma, nbrs, cfg.normalize_beta,
                            cfg.gamma_floor)
              : fixed_coupling;
      const MStepReport report =
          run_mstep(state, post.s, coupling, nbrs, mopts);
      result.inner_iteration_counts.push_back(report.iterations);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (EM iteration k=" +
                         std::to_string(k) + ")");
    }
    if (cfg.record_gamma_trace) result.gamma_trace.push_back(state.gamma);
    result.iterations = k;

    if (have_prev) {
      const double change =
          kernels::diff_sumsq(post.mu.data(), mu_prev.data(), post.mu.size());
      if (change <= cfg.eps_outer) {
        result.converged = true;
        break;
      }
    }
    mu_prev = std::move(post.mu);
    have_prev = true;
  }

  result.gamma = state.gamma;
  result.x_hat = posterior.update(state.gamma).mu;
  return result;
}

std::vector<int> estimate_support(const std::vector<double>& gamma,
                                  double tau) {
  if (!(tau > 0.0) || !(tau < 1.0))
    throw ConfigError("estimate_support: tau must lie in (0,1)");
  double gmax = 0.0;
  for (double g : gamma) gmax = std::max(gmax, g);
  std::vector<int> support;
  const double thresh = tau * gmax;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (gamma[i] > thresh) support.push_back(static_cast<int>(i));
  return support;
}

}  // namespace bsbl
