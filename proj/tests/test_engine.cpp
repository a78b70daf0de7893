#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bsbl/datagen.hpp"
#include "bsbl/engine.hpp"
#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"
#include "oracles.hpp"

using bsbl::CMatrix;
using bsbl::cplx;
using bsbl::estimate_support;
using bsbl::Problem;
using bsbl::SolverConfig;
using bsbl::SolverResult;
using bsbl::SplitMix64;
using bsbl::Variant;

namespace {

Problem spike_problem(std::vector<int> spikes, std::size_t n) {
  Problem p;
  p.A = CMatrix::identity(n);
  CMatrix x(n, 1);
  for (int i : spikes) x(static_cast<std::size_t>(i), 0) = cplx(1.0, 0.0);
  p.Y = x;  // noiseless observation through the identity
  p.sigma2 = 1e-4;
  return p;
}

}  // namespace

TEST_CASE("identity sensing recovers spike locations") {
  const std::vector<int> spikes{3, 9, 14};
  const Problem p = spike_problem(spikes, 20);
  SolverConfig cfg;
  const SolverResult res = run(p, cfg);

  std::vector<std::size_t> order(20);
  for (std::size_t i = 0; i < 20; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return res.gamma[a] > res.gamma[b]; });
  std::vector<int> top(3);
  for (int i = 0; i < 3; ++i) top[i] = static_cast<int>(order[i]);
  std::sort(top.begin(), top.end());
  CHECK(top == spikes);
}

TEST_CASE("m_sbl equals proposed with window zero, bit for bit") {
  bsbl::ScenarioSpec spec;
  spec.n = 24;
  spec.l = 10;
  spec.m = 2;
  spec.pattern = bsbl::RandomPattern{4};
  spec.snr_db = 20.0;
  spec.seed = 61;
  const bsbl::Dataset ds = make_dataset(spec);

  SolverConfig a;
  a.variant = Variant::proposed;
  a.window = 0;
  a.k_max = 30;
  a.record_gamma_trace = true;
  SolverConfig b = a;
  b.variant = Variant::m_sbl;
  b.window = 7;  // overridden by the variant constraint

  const SolverResult ra = run(ds.problem, a);
  const SolverResult rb = run(ds.problem, b);
  REQUIRE(ra.iterations == rb.iterations);
  CHECK(ra.x_hat == rb.x_hat);
  CHECK(ra.gamma == rb.gamma);
  for (int k = 0; k < ra.iterations; ++k)
    CHECK(ra.gamma_trace[static_cast<std::size_t>(k)] ==
          rb.gamma_trace[static_cast<std::size_t>(k)]);
}

TEST_CASE("determinism and recomputation invariants") {
  bsbl::ScenarioSpec spec;
  spec.n = 30;
  spec.l = 12;
  spec.m = 3;
  spec.pattern = bsbl::BlockPattern{2, 3};
  spec.snr_db = 15.0;
  spec.seed = 62;
  const bsbl::Dataset ds = make_dataset(spec);

  SolverConfig cfg;
  cfg.k_max = 40;
  const SolverResult r1 = run(ds.problem, cfg);
  const SolverResult r2 = run(ds.problem, cfg);
  CHECK(r1.x_hat == r2.x_hat);
  CHECK(r1.gamma == r2.gamma);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.converged == r2.converged);

  // x_hat is exactly the posterior mean at the final gamma
  const auto post = posterior_update(ds.problem, r1.gamma, cfg.gamma_floor);
  CHECK(r1.x_hat == post.mu);

  // bookkeeping invariants
  CHECK(r1.objective_trace.size() == static_cast<std::size_t>(r1.iterations));
  CHECK(r1.inner_iteration_counts.size() ==
        static_cast<std::size_t>(r1.iterations));
  for (double v : r1.objective_trace) CHECK(std::isfinite(v));
  for (double g : r1.gamma) {
    CHECK(g >= cfg.gamma_floor);
    CHECK(g <= cfg.gamma_cap);
  }
}

TEST_CASE("gamma iterates stay inside the clamp box across variants") {
  bsbl::ScenarioSpec spec;
  spec.n = 24;
  spec.l = 10;
  spec.m = 2;
  spec.pattern = bsbl::HybridPattern{1, 3, 2};
  spec.snr_db = 10.0;
  spec.seed = 63;
  const bsbl::Dataset ds = make_dataset(spec);

  for (Variant v : {Variant::proposed, Variant::m_sbl, Variant::msbl_dol}) {
    SolverConfig cfg;
    cfg.variant = v;
    cfg.k_max = 25;
    cfg.record_gamma_trace = true;
    const SolverResult res = run(ds.problem, cfg);
    for (const auto& gvec : res.gamma_trace)
      for (double g : gvec) {
        CHECK(g >= cfg.gamma_floor);
        CHECK(g <= cfg.gamma_cap);
      }
  }
}

TEST_CASE("scalar and avx2 backends agree through the whole solver") {
  namespace kn = bsbl::kernels;
  if (!kn::cpu_supports_avx2()) {
    MESSAGE("AVX2 unavailable, skipping");
    return;
  }
  const auto original = kn::active_backend();
  bsbl::ScenarioSpec spec;
  spec.n = 24;
  spec.l = 12;
  spec.m = 3;
  spec.pattern = bsbl::BlockPattern{2, 3};
  spec.snr_db = 20.0;
  spec.seed = 64;
  const bsbl::Dataset ds = make_dataset(spec);
  SolverConfig cfg;
  cfg.k_max = 60;

  kn::force_backend(kn::Backend::scalar);
  const SolverResult rs = run(ds.problem, cfg);
  kn::force_backend(kn::Backend::avx2);
  const SolverResult rv = run(ds.problem, cfg);
  kn::force_backend(original);

  REQUIRE(rs.iterations == rv.iterations);
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < rs.x_hat.size(); ++i) {
    diff += std::norm(rs.x_hat.data()[i] - rv.x_hat.data()[i]);
    norm += std::norm(rs.x_hat.data()[i]);
  }
  CHECK(std::sqrt(diff / norm) <= 1e-10);
  for (std::size_t i = 0; i < rs.gamma.size(); ++i)
    CHECK(std::abs(rs.gamma[i] - rv.gamma[i]) <= 1e-9 * rs.gamma[i]);
}

TEST_CASE("config normalization") {
  SolverConfig cfg;
  cfg.variant = Variant::m_sbl;
  cfg.window = 5;
  CHECK(cfg.normalized().window == 0);

  cfg.variant = Variant::msbl_dol;
  CHECK(cfg.normalized().window == 1);
  CHECK(cfg.normalized().beta_mode == bsbl::BetaMode::fixed);

  cfg = SolverConfig{};
  cfg.k_max = 0;
  CHECK_THROWS_AS(cfg.normalized(), bsbl::ConfigError);
  cfg = SolverConfig{};
  cfg.eps_outer = 0.0;
  CHECK_THROWS_AS(cfg.normalized(), bsbl::ConfigError);
  cfg = SolverConfig{};
  cfg.fixed_beta = 1.5;
  cfg.variant = Variant::msbl_dol;
  CHECK_THROWS_AS(cfg.normalized(), bsbl::ConfigError);
}

TEST_CASE("estimate_support") {
  CHECK(estimate_support({1.0, 1e-6, 1e-6}) == std::vector<int>{0});
  CHECK(estimate_support({2.0, 2.0, 2.0}) == std::vector<int>{0, 1, 2});
  CHECK(estimate_support({1.0, 0.5, 0.009}) == std::vector<int>{0, 1});
  CHECK(estimate_support({0.0, 0.0}).empty());
  CHECK_THROWS_AS(estimate_support({1.0}, 1.0), bsbl::ConfigError);
  CHECK_THROWS_AS(estimate_support({1.0}, 0.0), bsbl::ConfigError);
}
