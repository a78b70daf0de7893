#include "bsbl/admm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"

namespace bsbl {

namespace {

void check_shapes(const AdmmState& state, const std::vector<double>& s,
                  const CouplingState& coupling, const NeighborhoodMap& nbrs) {
  if (state.gamma.size() != nbrs.n || s.size() != nbrs.n ||
      coupling.n() != nbrs.n)
    throw ConfigError("m-step: inconsistent lengths");
  if (state.C.window() != nbrs.window || state.lambda.window() != nbrs.window ||
      coupling.window() != nbrs.window)
    throw ConfigError("m-step: inconsistent band windows");
  if (!(state.rho > 0.0)) throw ConfigError("m-step: rho must be positive");
}

std::vector<double> log_clamped(const std::vector<double>& g, double floor) {
  std::vector<double> lg(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    lg[i] = std::log(std::max(g[i], floor));
  return lg;
}

// gamma entries are positive by precondition; the clamp only guards the log
// against a literal zero
std::vector<double> log_positive(const std::vector<double>& g) {
  return log_clamped(g, std::numeric_limits<double>::min());
}

// Scalar subproblem at index i as a function of u = log gamma_i, with the
// neighbor logs frozen at lg. Convex in u.
struct ScalarObjective {
  const AdmmState& state;
  const std::vector<double>& s;
  const CouplingState& coupling;
  const NeighborhoodMap& nbrs;
  const std::vector<double>& lg;
  std::size_t i;

  double operator()(double u) const {
    const double rho = state.rho;
    double val = u + s[i] * std::exp(-u);
    for (std::size_t j : nbrs.neighbors[i]) {
      const double b = coupling(i, j);
      if (b == 0.0) continue;
      if (j < i) {
        const double at =
            state.C.at(i, j) + b * lg[j] + state.lambda.at(i, j) / rho;
        const double r = at - b * u;
        val += 0.5 * rho * r * r;
      } else {
        const double ab =
            state.C.at(j, i) - b * lg[j] + state.lambda.at(j, i) / rho;
        const double r = ab + b * u;
        val += 0.5 * rho * r * r;
      }
    }
    return val;
  }

  bool coupling_free() const {
    for (std::size_t j : nbrs.neighbors[i])
      if (coupling(i, j) != 0.0) return false;
    return true;
  }
};

template <typename F>
double golden_section_min(F&& f, double a, double b, double tol) {
  const double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

AdmmState AdmmState::init(std::vector<double> gamma0, std::size_t window,
                          double rho) {
  AdmmState st;
  const std::size_t n = gamma0.size();
  st.gamma = std::move(gamma0);
  st.C = BandLower(n, window);
  st.lambda = BandLower(n, window);
  st.rho = rho;
  st.t = 0;
  return st;
}

std::vector<double> gamma_update(const AdmmState& state,
                                 const std::vector<double>& s,
                                 const CouplingState& coupling,
                                 const NeighborhoodMap& nbrs,
                                 const MStepOptions& opts) {
  check_shapes(state, s, coupling, nbrs);
  const double rho = state.rho;
  std::vector<double> g = state.gamma;
  std::vector<double> lg = log_clamped(g, opts.gamma_floor);
  for (std::size_t i = 0; i < nbrs.n; ++i) {
    double sum_beta = 0.0, sum_atilde = 0.0, sum_abar = 0.0;
    for (std::size_t j : nbrs.neighbors[i]) {
      const double b = coupling(i, j);
      sum_beta += b;
      if (j < i)
        sum_atilde += state.C.at(i, j) + b * lg[j] + state.lambda.at(i, j) / rho;
      else
        sum_abar += state.C.at(j, i) - b * lg[j] + state.lambda.at(j, i) / rho;
    }
    double denom = 1.0 + rho * sum_beta - rho * (sum_atilde - sum_abar);
    if (!std::isfinite(denom))
      throw NumericError("gamma update: non-finite denominator at index " +
                         std::to_string(i));
    if (denom <= opts.denom_floor) denom = opts.denom_floor;
    const double gi = s[i] / denom;
    if (!std::isfinite(gi))
      throw NumericError("gamma update: non-finite value at index " +
                         std::to_string(i));
    g[i] = std::clamp(gi, opts.gamma_floor, opts.gamma_cap);
    lg[i] = std::log(g[i]);
  }
  return g;
}

std::vector<double> gamma_update_exact(const AdmmState& state,
                                       const std::vector<double>& s,
                                       const CouplingState& coupling,
                                       const NeighborhoodMap& nbrs,
                                       const MStepOptions& opts) {
  check_shapes(state, s, coupling, nbrs);
  const double lo = std::log(opts.gamma_floor);
  const double hi = std::log(opts.gamma_cap);
  // C, lambda, rho stay fixed during the sweep; Gauss-Seidel freshness lives
  // in the log vector
  std::vector<double> g = state.gamma;
  std::vector<double> lg = log_clamped(g, opts.gamma_floor);
  for (std::size_t i = 0; i < nbrs.n; ++i) {
    const ScalarObjective obj{state, s, coupling, nbrs, lg, i};
    double gi;
    if (obj.coupling_free()) {
      gi = s[i];  // stationary point of log(g) + s/g
    } else {
      gi = std::exp(golden_section_min(obj, lo, hi, 1e-8));
    }
    if (!std::isfinite(gi))
      throw NumericError("gamma update: non-finite value at index " +
                         std::to_string(i));
    g[i] = std::clamp(gi, opts.gamma_floor, opts.gamma_cap);
    lg[i] = std::log(g[i]);
  }
  return g;
}

BandLower c_update(const AdmmState& state, const std::vector<double>& gamma_new,
                   const CouplingState& coupling, std::size_t m_count) {
  const std::size_t n = gamma_new.size();
  const std::size_t w = state.C.window();
  const double rho = state.rho;
  const double kappa = 1.0 / (static_cast<double>(m_count) * rho);
  std::vector<double> lg = log_positive(gamma_new);
  BandLower out(n, w);
  for (std::size_t d = 1; d <= w; ++d)
    for (std::size_t i = d; i < n; ++i) {
      const std::size_t j = i - d;
      const double gbar = coupling(i, j) * (lg[i] - lg[j]);
      out.at(i, j) = soft_threshold(gbar - state.lambda.at(i, j) / rho, kappa);
    }
  return out;
}

BandLower lambda_update(const AdmmState& state, const BandLower& c_new,
                        const std::vector<double>& gamma_new,
                        const CouplingState& coupling) {
  const std::size_t n = gamma_new.size();
  const std::size_t w = state.lambda.window();
  std::vector<double> lg = log_positive(gamma_new);
  BandLower out(n, w);
  for (std::size_t d = 1; d <= w; ++d)
    for (std::size_t i = d; i < n; ++i) {
      const std::size_t j = i - d;
      const double gbar = coupling(i, j) * (lg[i] - lg[j]);
      out.at(i, j) =
          state.lambda.at(i, j) + state.rho * (c_new.at(i, j) - gbar);
    }
  return out;
}

double primal_residual(const BandLower& c, const std::vector<double>& gamma,
                       const CouplingState& coupling) {
  std::vector<double> lg = log_positive(gamma);
  double r = 0.0;
  c.for_each_pair([&](std::size_t i, std::size_t j, double cij) {
    const double gbar = coupling(i, j) * (lg[i] - lg[j]);
    r = std::max(r, std::abs(cij - gbar));
  });
  return r;
}

MStepReport run_mstep(AdmmState& state, const std::vector<double>& s,
                      const CouplingState& coupling,
                      const NeighborhoodMap& nbrs, const MStepOptions& opts) {
  check_shapes(state, s, coupling, nbrs);
  if (opts.t_max < 1) throw ConfigError("m-step: t_max must be >= 1");
  if (!(opts.eps_inner > 0.0))
    throw ConfigError("m-step: eps_inner must be positive");

  MStepReport report;
  report.gamma_min = std::numeric_limits<double>::infinity();
  report.gamma_max = -std::numeric_limits<double>::infinity();
  int t = 0;
  for (;;) {
    ++t;
    std::vector<double> gamma_new;
    try {
      gamma_new = opts.gamma_step == GammaStep::exact
                      ? gamma_update_exact(state, s, coupling, nbrs, opts)
                      : gamma_update(state, s, coupling, nbrs, opts);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (inner iteration t=" +
                         std::to_string(t) + ")");
    }
    const double change =
        kernels::diff_sumsq(gamma_new.data(), state.gamma.data(), nbrs.n);
    state.gamma = std::move(gamma_new);
    for (double gi : state.gamma) {
      report.gamma_min = std::min(report.gamma_min, gi);
      report.gamma_max = std::max(report.gamma_max, gi);
    }
    BandLower c_new = c_update(state, state.gamma, coupling, opts.m_count);
    state.lambda = lambda_update(state, c_new, state.gamma, coupling);
    state.C = std::move(c_new);
    const double resid = primal_residual(state.C, state.gamma, coupling);
    if (t == 1) report.residual_first = resid;
    report.residual_exit = resid;
    if (nbrs.empty_band()) break;  // update is gamma-independent, fixed point
    if (change <= opts.eps_inner || t >= opts.t_max) break;
  }
  state.t = t;
  report.iterations = t;
  return report;
}

double exact_gamma_oracle(std::size_t i, const AdmmState& state,
                          const std::vector<double>& s,
                          const CouplingState& coupling,
                          const NeighborhoodMap& nbrs,
                          const MStepOptions& opts) {
  check_shapes(state, s, coupling, nbrs);
  const std::vector<double> lg = log_clamped(state.gamma, opts.gamma_floor);
  const ScalarObjective obj{state, s, coupling, nbrs, lg, i};
  // objective is convex in u = log gamma, so golden-section is exact
  const double u = golden_section_min(obj, std::log(opts.gamma_floor),
                                      std::log(opts.gamma_cap), 1e-8);
  return std::exp(u);
}

}  // namespace bsbl
