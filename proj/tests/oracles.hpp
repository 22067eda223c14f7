#pragma once

// Slow, test-only reference implementations. None of them call into the code they check.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <boost/rational.hpp>

namespace oracle {

using i64 = std::int64_t;
using i128 = __int128;
using Q = boost::rational<i64>;
using Eta6 = std::array<i64, 6>;

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<i64> primes_dividing(i64 n) {
  std::vector<i64> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

// Pairs of eta indices (1-based) that may share a prime.
inline bool eta_pair_allowed(int i, int j) {
  if (i > j) std::swap(i, j);
  return (i == 1 && (j == 2 || j == 3 || j == 4)) || (i == 3 && j == 5) || (i == 4 && j == 6);
}

inline bool eta_ok(const Eta6& e) {
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      if (!eta_pair_allowed(i, j) && gcd(e[i - 1], e[j - 1]) != 1) return false;
  return true;
}

inline bool alpha_ok(const Eta6& e, i64 a1, i64 a2, i64 a3) {
  const auto [e1, e2, e3, e4, e5, e6] = e;
  return gcd(a1, e1 * e3 * e4 * e5 * e6) == 1 && gcd(a2, e1 * e2 * e3 * e4 * e6) == 1 &&
         gcd(a3, e1 * e2 * e3 * e4 * e5) == 1;
}

inline i64 monomial(const Eta6& e) {
  const auto [e1, e2, e3, e4, e5, e6] = e;
  return e1 * e1 * e1 * e1 * e2 * e2 * e3 * e3 * e3 * e4 * e4 * e4 * e5 * e5 * e6 * e6;
}

// All positive 6-tuples with eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2 <= N, by plain nested loops.
inline std::vector<Eta6> all_etas(i64 N) {
  std::vector<Eta6> out;
  for (i64 e1 = 1; e1 * e1 * e1 * e1 <= N; ++e1)
    for (i64 e2 = 1; monomial({e1, e2, 1, 1, 1, 1}) <= N; ++e2)
      for (i64 e3 = 1; monomial({e1, e2, e3, 1, 1, 1}) <= N; ++e3)
        for (i64 e4 = 1; monomial({e1, e2, e3, e4, 1, 1}) <= N; ++e4)
          for (i64 e5 = 1; monomial({e1, e2, e3, e4, e5, 1}) <= N; ++e5)
            for (i64 e6 = 1; monomial({e1, e2, e3, e4, e5, e6}) <= N; ++e6) out.push_back({e1, e2, e3, e4, e5, e6});
  return out;
}

// Torsor count with alpha1 and alpha2 over their full boxes; alpha3 from the equation.
inline std::uint64_t naive_torsor_count(i64 B) {
  std::uint64_t n = 0;
  for (const auto& e : all_etas(B)) {
    if (!eta_ok(e)) continue;
    const auto [e1, e2, e3, e4, e5, e6] = e;
    const i128 x1 = monomial(e);
    const i64 F3 = e4 * e6 * e6;
    for (i64 a1 = -B; a1 <= B; ++a1)
      for (i64 a2 = -B; a2 <= B; ++a2) {
        const i128 num = -(static_cast<i128>(e2) * a1 * a1 + static_cast<i128>(e3) * e5 * e5 * a2);
        if (num % F3 != 0) continue;
        const i64 a3 = static_cast<i64>(num / F3);
        const i128 x0 = static_cast<i128>(e1 * e1 * e2 * e3 * e3 * e4 * e5 * e5) * a2;
        const i128 x2 = static_cast<i128>(e1 * e1 * e1 * e2 * e2 * e3 * e3 * e4 * e4 * e5 * e6) * a1;
        const i128 x3 = static_cast<i128>(e1 * e1 * e2 * e3 * e4 * e4 * e6 * e6) * a3;
        const i128 x4 = static_cast<i128>(a2) * a3;
        auto le = [B](i128 v) { return (v < 0 ? -v : v) <= B; };
        if (le(x0) && le(x1) && le(x2) && le(x3) && le(x4) && alpha_ok(e, a1, a2, a3)) ++n;
      }
  }
  return n;
}

// theta1 by scanning c3 over a full period, theta2 by Euler's phi.
inline Q theta_bruteforce(const Eta6& e) {
  if (!eta_ok(e)) return Q(0);
  const auto [e1, e2, e3, e4, e5, e6] = e;
  i64 rad = 1;
  for (i64 p : primes_dividing(e1 * e2 * e3 * e4 * e5 * e6)) rad *= p;
  const i64 m = e4 * e6 * e6, F = e3 * e5 * e5;
  i64 c1 = 0;
  while ((c1 * F) % m != 1 % m) ++c1;
  const i64 c2 = (c1 * F - 1) / m;
  i64 allowed = 0;
  for (i64 c3 = 0; c3 < rad; ++c3) {
    const i64 a2 = c3 * m - c1 * e2, a3 = c2 * e2 - c3 * F;  // alpha1 = 1
    if (gcd(a2, e1 * e2 * e3 * e4 * e6) == 1 && gcd(a3, e1 * e2 * e3 * e4 * e5) == 1) ++allowed;
  }
  Q th(allowed, rad);
  for (i64 p : primes_dividing(e1 * e3 * e4 * e5 * e6)) th *= Q(p - 1, p);
  return th;
}

// n -> sum over eta with monomial n of theta / (eta1 ... eta6), for all n <= N.
inline std::map<i64, Q> delta_table(i64 N) {
  std::map<i64, Q> out;
  for (const auto& e : all_etas(N)) {
    const Q th = theta_bruteforce(e);
    if (th == Q(0)) continue;
    out[monomial(e)] += th / Q(e[0] * e[1] * e[2] * e[3] * e[4] * e[5]);
  }
  return out;
}

}  // namespace oracle
