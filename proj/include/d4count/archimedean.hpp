#pragma once

// Archimedean density. With
//   g1(u, v) = meas{ t : |t v^2|, |t (t v + u^2)|, |v (t v + u^2)| <= 1 },
//   g2(v)    = int_{|v^2 u| <= 1} g1(u, v) du,
// the real density is omega_inf = 3 int_0^1 g2(v) dv.

#include <cstdint>

#include "d4count/quadrature.hpp"

namespace d4count {

inline constexpr double kDefaultG2Tol = 1e-6;
inline constexpr double kDefaultOmegaTol = 1e-5;
inline constexpr std::uint64_t kDefaultOmegaMaxEvals = 200'000;  // outer rule only

/// Closed form (interval arithmetic on the three constraints). Throws for v <= 0.
double g1(double u, double v);

/// Support of g1(., v) in u >= 0 intersected with |v^2 u| <= 1.
double g2_u_limit(double v);

/// Adaptive quadrature of g1 in u. Throws QuadratureError on budget exhaustion.
QuadratureResult g2(double v, double tol = kDefaultG2Tol);

/// 3 int_{v_lo}^{v_hi} g2(v) dv, 0 <= v_lo < v_hi <= 1, through v = w^2.
/// `max_evals` caps the outer rule's g2 calls; QuadratureError past it.
QuadratureResult omega_integral(double v_lo, double v_hi, double tol, std::uint64_t max_evals = kDefaultOmegaMaxEvals);

/// omega_inf = omega_integral(0, 1, tol, max_evals).
QuadratureResult omega_infinity(double tol = kDefaultOmegaTol, std::uint64_t max_evals = kDefaultOmegaMaxEvals);

struct MonteCarloEstimate {
  double value;
  double std_error;
  std::uint64_t samples;
};

/// Monte Carlo estimate of omega_inf: w ~ U(0,1), v = w^2, u ~ U(-U(v), U(v)),
/// weight 3 * 2w * 2U(v) * g1(u, v). Deterministic for a fixed seed.
MonteCarloEstimate omega_infinity_mc(std::uint64_t seed, std::uint64_t samples);

}  // namespace d4count
