#include "bsbl/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"

namespace bsbl {

namespace {

std::vector<double> clamp_gamma(const std::vector<double>& gamma,
                                double floor, std::size_t n) {
  if (gamma.size() != n)
    throw ConfigError("gamma length " + std::to_string(gamma.size()) +
                      " does not match N=" + std::to_string(n));
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(gamma[i]))
      throw NumericError("non-finite gamma at index " + std::to_string(i));
    g[i] = std::max(gamma[i], floor);
  }
  return g;
}

CMatrix scaled_gram(const CMatrix& a, double inv_s2) {
  CMatrix g = adjoint_matmul(a, a);
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] *= inv_s2;
  return g;
}

CMatrix scaled_rhs(const CMatrix& a, const CMatrix& y, double inv_s2) {
  CMatrix r = adjoint_matmul(a, y);
  for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] *= inv_s2;
  return r;
}

// gram + diag(1/gamma), diagonal forced real
CMatrix build_precision(const CMatrix& gram, const std::vector<double>& g) {
  CMatrix phi = gram;
  for (std::size_t i = 0; i < g.size(); ++i)
    phi(i, i) = cplx(gram(i, i).real() + 1.0 / g[i], 0.0);
  return phi;
}

}  // namespace

void Problem::validate() const {
  if (A.rows() == 0 || A.cols() == 0)
    throw ConfigError("problem: A must be at least 1x1");
  if (Y.cols() == 0) throw ConfigError("problem: Y must have M >= 1 columns");
  if (Y.rows() != A.rows())
    throw ConfigError("problem: A has " + std::to_string(A.rows()) +
                      " rows but Y has " + std::to_string(Y.rows()));
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw ConfigError("problem: sigma2 must be positive and finite");
  if (!A.all_finite() || !Y.all_finite())
    throw ConfigError("problem: A and Y must be finite");
}

std::vector<double> compute_s(const CMatrix& mu, const CMatrix& sigma,
                              std::size_t m_count) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != mu.rows())
    throw ConfigError("compute_s: mu/Sigma dimensions disagree");
  if (m_count != mu.cols() || m_count == 0)
    throw ConfigError("compute_s: M does not match mu columns");
  const std::size_t n = mu.rows();
  std::vector<double> s(n);
  const double inv_m = 1.0 / static_cast<double>(m_count);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = sigma(i, i).real() + inv_m * kernels::sumsq(mu.row(i), m_count);
  return s;
}

PosteriorSolver::PosteriorSolver(const Problem& p, double gamma_floor)
    : n_(p.n()), m_(p.m()), gamma_floor_(gamma_floor) {
  p.validate();
  const double inv_s2 = 1.0 / p.sigma2;
  gram_ = scaled_gram(p.A, inv_s2);
  rhs_ = scaled_rhs(p.A, p.Y, inv_s2);
}

PosteriorState PosteriorSolver::update(const std::vector<double>& gamma) const {
  const std::vector<double> g = clamp_gamma(gamma, gamma_floor_, n_);
  const Cholesky chol(build_precision(gram_, g));
  PosteriorState out;
  out.Sigma = chol.inverse();
  out.mu = chol.solve(rhs_);
  out.s = compute_s(out.mu, out.Sigma, m_);
  return out;
}

PosteriorState posterior_update(const Problem& p,
                                const std::vector<double>& gamma,
                                double gamma_floor) {
  return PosteriorSolver(p, gamma_floor).update(gamma);
}

double marginal_objective(const Problem& p, const std::vector<double>& gamma,
                          double gamma_floor) {
  p.validate();
  const std::vector<double> g = clamp_gamma(gamma, gamma_floor, p.n());
  const std::size_t l = p.l(), m = p.m();
  // Sigma_y = sigma2 I + A diag(g) A^H
  CMatrix ag = p.A;
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < p.n(); ++c) ag(r, c) *= g[c];
  CMatrix sy = matmul(ag, adjoint(p.A));
  for (std::size_t r = 0; r < l; ++r)
    sy(r, r) = cplx(sy(r, r).real() + p.sigma2, 0.0);
  const Cholesky chol(sy);
  const CMatrix z = chol.solve(p.Y);
  const double fit = kernels::cdotc(p.Y.data(), z.data(), l * m).real();
  const double obj = static_cast<double>(m) * chol.logdet() + fit;
  if (!std::isfinite(obj))
    throw NumericError("marginal objective is not finite");
  return obj;
}

double marginal_objective_complement(const Problem& p,
                                     const std::vector<double>& gamma,
                                     double gamma_floor) {
  p.validate();
  const std::vector<double> g = clamp_gamma(gamma, gamma_floor, p.n());
  const std::size_t l = p.l(), m = p.m();
  const double inv_s2 = 1.0 / p.sigma2;
  const Cholesky chol(build_precision(scaled_gram(p.A, inv_s2), g));
  double logdet_sy = static_cast<double>(l) * std::log(p.sigma2) + chol.logdet();
  for (double gi : g) logdet_sy += std::log(gi);
  const CMatrix mu = chol.solve(scaled_rhs(p.A, p.Y, inv_s2));
  const CMatrix ax = matmul(p.A, mu);
  const double fit =
      (kernels::sumsq(p.Y.data(), l * m) -
       kernels::cdotc(p.Y.data(), ax.data(), l * m).real()) *
      inv_s2;
  const double obj = static_cast<double>(m) * logdet_sy + fit;
  if (!std::isfinite(obj))
    throw NumericError("marginal objective (complement path) is not finite");
  return obj;
}

CMatrix oracle_mmse(const Problem& p, const std::vector<int>& support,
                    const std::vector<double>& gamma_s) {
  p.validate();
  if (support.empty()) throw ConfigError("oracle: support must be nonempty");
  if (support.size() > p.n())
    throw ConfigError("oracle: support larger than N");
  if (gamma_s.size() != support.size())
    throw ConfigError("oracle: gamma_s length does not match support");
  std::vector<int> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("oracle: duplicate support index");
  if (sorted.front() < 0 || static_cast<std::size_t>(sorted.back()) >= p.n())
    throw ConfigError("oracle: support index out of range");
  for (double gi : gamma_s)
    if (!(gi > 0.0) || !std::isfinite(gi))
      throw ConfigError("oracle: gamma_s entries must be positive");

  const std::size_t k = support.size(), l = p.l(), m = p.m();
  CMatrix a_s(l, k);
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < k; ++c)
      a_s(r, c) = p.A(r, static_cast<std::size_t>(support[c]));

  const double inv_s2 = 1.0 / p.sigma2;
  const Cholesky chol(build_precision(scaled_gram(a_s, inv_s2), gamma_s));
  const CMatrix xs = chol.solve(scaled_rhs(a_s, p.Y, inv_s2));

  CMatrix out(p.n(), m);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < m; ++j)
      out(static_cast<std::size_t>(support[c]), j) = xs(c, j);
  return out;
}

}  // namespace bsbl
