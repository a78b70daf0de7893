#pragma once

// Shared solver defaults. Values are referenced by the engine configuration,
// the config-file parser, and the CLI help text.

namespace bsbl::defaults {

inline constexpr double gamma_floor = 1e-10;
inline constexpr double gamma_cap = 1e8;
inline constexpr double denom_floor = 1e-6;
inline constexpr double gamma_init = 1.0;
inline constexpr double rho = 0.1;
inline constexpr int window = 2;
inline constexpr int warmup_iterations = 100;
inline constexpr double fixed_beta = 0.5;
inline constexpr int k_max = 200;
inline constexpr int t_max = 50;
inline constexpr double eps_outer = 1e-6;
inline constexpr double eps_inner = 1e-6;
inline constexpr double support_tau = 1e-2;

}  // namespace bsbl::defaults
