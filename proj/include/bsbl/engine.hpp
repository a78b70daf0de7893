#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bsbl/admm.hpp"
#include "bsbl/defaults.hpp"
#include "bsbl/model.hpp"

namespace bsbl {

enum class Variant { proposed, m_sbl, msbl_dol };

enum class BetaMode { adaptive, fixed };

// Everything that defines one algorithm run. The three variants are
// configurations of the same loop: m_sbl drops the coupling entirely
// (window 0) and msbl_dol pins a constant weight on immediate neighbors.
struct SolverConfig {
  Variant variant = Variant::proposed;
  std::size_t window = defaults::window;
  double rho = defaults::rho;
  GammaStep gamma_step = GammaStep::exact;
  BetaMode beta_mode = BetaMode::adaptive;
  double fixed_beta = defaults::fixed_beta;
  bool normalize_beta = false;
  // EM iterations run with the coupling switched off before the penalty
  // engages. With a constant gamma_init every adaptive weight starts at 1
  // (all logs equal), which glues isolated active rows to their decaying
  // neighbors before the data can separate them; running plain iterations
  // first lets the weights differentiate from the statistics, after which
  // unrelated pairs sit decades apart in log gamma and their weights vanish.
  int warmup_iterations = defaults::warmup_iterations;
  int k_max = defaults::k_max;
  int t_max = defaults::t_max;
  double eps_outer = defaults::eps_outer;
  double eps_inner = defaults::eps_inner;
  double gamma_floor = defaults::gamma_floor;
  double gamma_cap = defaults::gamma_cap;
  double denom_floor = defaults::denom_floor;
  double gamma_init = defaults::gamma_init;
  bool record_gamma_trace = false;  // diagnostics; off in production runs

  // Applies the variant constraints (effective window, beta mode) and
  // validates ranges. Throws ConfigError.
  SolverConfig normalized() const;
};

struct SolverResult {
  CMatrix x_hat;              // posterior mean at the final gamma
  std::vector<double> gamma;  // final hyper-parameters
  int iterations = 0;         // outer EM iterations performed
  std::vector<double> objective_trace;    // one entry per EM iteration
  std::vector<int> inner_iteration_counts;
  bool converged = false;
  std::vector<std::vector<double>> gamma_trace;  // filled only when recorded
};

Variant variant_from_string(const std::string& name);
std::string to_string(Variant v);

SolverResult run(const Problem& problem, const SolverConfig& config);

// Indices with gamma_i strictly above tau * max(gamma). Empty for all-zero
// gamma. Requires 0 < tau < 1.
std::vector<int> estimate_support(const std::vector<double>& gamma,
                                  double tau = defaults::support_tau);

}  // namespace bsbl
