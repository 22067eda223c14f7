#include "d4count/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace d4count {

double g1(double u, double v) {
  if (!(v > 0)) throw std::invalid_argument("g1: v must be positive");
  const double w = u * u;
  // |t v^2| <= 1 and |v (t v + u^2)| <= 1. The lower end of the second interval
  // is always below -1/v^2 and its upper end always below 1/v^2.
  const double cap_lo = -1.0 / (v * v);
  const double cap_hi = (1.0 / v - w) / v;
  // t (t v + u^2) <= 1  <=>  t in [r_lo, r_hi]
  const double sq_plus = std::sqrt(w * w + 4 * v);
  const double r_lo = -(w + sq_plus) / (2 * v);
  const double r_hi = 2.0 / (w + sq_plus);
  const double lo = std::max(cap_lo, r_lo);
  const double hi = std::min(cap_hi, r_hi);
  if (!(hi > lo)) return 0.0;
  // t (t v + u^2) >= -1 fails strictly between the two negative roots of v t^2 + u^2 t + 1.
  const double disc = w * w - 4 * v;
  if (!(disc > 0)) return hi - lo;
  // Past the hole the surviving pieces [lo, h_lo] and [h_hi, hi] are tiny next
  // to |lo|, so each is measured from nearby endpoints. Both are nonempty up to
  // the caps: r_lo < h_lo < h_hi < hi and lo < h_hi whenever the hole exists.
  const double sq_minus = std::sqrt(disc);
  const double h_lo = -(w + sq_minus) / (2 * v);
  const double h_hi = -2.0 / (w + sq_minus);
  const double left_full = 4.0 / (sq_plus + sq_minus);  // h_lo - r_lo
  const double left = r_lo >= cap_lo ? left_full : std::clamp(h_lo - cap_lo, 0.0, left_full);
  const double right_full = r_hi + 2.0 / (w + sq_minus);  // r_hi - h_hi
  const double right = r_hi <= cap_hi ? right_full : std::clamp(cap_hi - h_hi, 0.0, right_full);
  return left + right;
}

double g2_u_limit(double v) {
  if (!(v > 0)) throw std::invalid_argument("g2_u_limit: v must be positive");
  return std::min(1.0 / (v * v), std::sqrt(2.0 / v));
}

QuadratureResult g2(double v, double tol) {
  if (!(v > 0) || v > 1) throw std::invalid_argument("g2: v must lie in (0, 1]");
  const double limit = g2_u_limit(v);
  // g1 is even in u. Its kinks: the hole opens at u^4 = 4v, the upper cap starts
  // binding at u^2 = 1/v - v^2 and the lower cap at u^2 = 1/v + v^2.
  std::vector<double> kinks;
  for (double k2 : {2 * std::sqrt(v), 1 / v - v * v, 1 / v + v * v})
    if (k2 > 0 && std::sqrt(k2) < limit) kinks.push_back(std::sqrt(k2));
  std::sort(kinks.begin(), kinks.end());
  auto f = [v](double u) { return g1(u, v); };
  auto half = integrate_adaptive(f, 0.0, limit, tol / 2, 4'000'000, kinks);
  half.value *= 2;
  half.error_estimate *= 2;
  return half;
}

QuadratureResult omega_integral(double v_lo, double v_hi, double tol, std::uint64_t max_evals) {
  if (!(tol > 0)) throw std::invalid_argument("omega_integral: tol must be positive");
  if (!(v_lo >= 0 && v_lo < v_hi && v_hi <= 1)) throw std::invalid_argument("omega_integral: need 0 <= v_lo < v_hi <= 1");
  // v = w^2 turns the v^{-1/2} growth of g2 at 0 into a bounded integrand.
  const double inner_tol = tol / 10;
  std::uint64_t inner_evals = 0;
  double inner_err = 0.0;
  auto f = [&](double w) {
    const auto r = g2(w * w, inner_tol);
    inner_evals += r.evaluations;
    inner_err = std::max(inner_err, r.error_estimate);
    return 6.0 * w * r.value;
  };
  auto res = integrate_adaptive(f, std::sqrt(v_lo), std::sqrt(v_hi), tol / 2, max_evals);
  res.evaluations += inner_evals;
  res.error_estimate += 3.0 * inner_err * (v_hi - v_lo);
  return res;
}

QuadratureResult omega_infinity(double tol, std::uint64_t max_evals) { return omega_integral(0.0, 1.0, tol, max_evals); }

MonteCarloEstimate omega_infinity_mc(std::uint64_t seed, std::uint64_t samples) {
  if (samples < 1000) throw std::invalid_argument("omega_infinity_mc: need at least 1000 samples");
  std::mt19937_64 rng(seed);
  auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };  // [0, 1)
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t k = 1; k <= samples; ++k) {
    const double w = 1.0 - u01();  // (0, 1]
    const double v = w * w;
    const double U = g2_u_limit(v);
    const double u = (2 * u01() - 1) * U;
    const double x = 12.0 * w * U * g1(u, v);
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

}  // namespace d4count
