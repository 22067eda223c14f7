#pragma once

// Exact enumeration of torsor points of bounded height.
//
// Loop order: eta1 -> ... -> eta6 (pruned by the eta-monomial of x1 and by the
// pairwise coprimality of the Dynkin diagram), then alpha1, then alpha2 over a
// single residue class modulo eta4*eta6^2. alpha3 is determined by the torsor
// equation. Every candidate is checked exactly; interval arithmetic only
// narrows the alpha2 range.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "d4count/intkit.hpp"
#include "d4count/torsor.hpp"

namespace d4count {

inline constexpr i64 kMaxCountBound = 1'000'000'000'000;  // 10^12

enum class Method { torsor, oracle };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct CountRecord {
  i64 B = 0;
  std::uint64_t count = 0;
  Method method = Method::torsor;
  double elapsed_ms = 0.0;
  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

namespace detail {

// Everything about a fixed eta that the fiber loops need.
struct FiberSetup {
  Eta eta;
  i64 B;
  i64 A;       // x0 = A * alpha2
  i64 E;       // x1
  i64 D;       // x2 = D * alpha1
  i64 C;       // x3 = C * alpha3
  i64 F2;      // eta3 eta5^2
  i64 m;       // eta4 eta6^2
  i64 c1;      // F2^{-1} mod m
  i64 P1;      // eta1 eta3 eta4 eta5 eta6  (coprime to alpha1)
  i64 P2;      // eta1 eta2 eta3 eta4 eta6  (coprime to alpha2)
  i64 P3;      // eta1 eta2 eta3 eta4 eta5  (coprime to alpha3)
  i64 a1_max;  // |alpha1| bound from |x2| <= B and x2^2 <= 2 B x1
  i64 a2_max;  // floor(B / A)
  i64 a3_max;  // floor(B / C)
};

/// Requires eta_coprimality_holds(eta) and E <= B <= kMaxCountBound.
FiberSetup make_fiber_setup(const Eta& eta, i64 B);

struct Alpha2Window {
  i64 lo;
  i64 hi;
  i64 hole_lo;  // integers in [hole_lo, hole_hi] certainly violate |alpha2 alpha3| <= B
  i64 hole_hi;  // (empty hole: hole_lo > hole_hi)
};

/// Superset of the alpha2 values compatible with the x0, x3, x4 bounds for this alpha1.
Alpha2Window alpha2_window(const FiberSetup& s, i128 K);

/// Calls f(alpha2, alpha3) for every pair completing (eta, alpha1) to a valid torsor point.
template <class F>
void for_each_alpha23(const FiberSetup& s, i64 alpha1, F&& f) {
  const i128 K = checked_mul(s.eta[1], checked_mul(static_cast<i128>(alpha1), alpha1));
  const Alpha2Window w = alpha2_window(s, K);
  if (w.lo > w.hi) return;
  // alpha2 = -c1 * K (mod m)
  i128 r = (-(static_cast<i128>(s.c1) * (K % s.m))) % s.m;
  if (r < 0) r += s.m;

  auto run = [&](i64 lo, i64 hi) {
    if (lo > hi) return;
    i128 off = (r - lo) % s.m;
    if (off < 0) off += s.m;
    i128 a2 = static_cast<i128>(lo) + off;
    if (a2 > hi) return;
    const i128 num = K + static_cast<i128>(s.F2) * a2;
    if (num % s.m != 0) throw std::logic_error("for_each_alpha23: residue class does not solve the torsor equation");
    i128 a3 = -num / s.m;
    for (; a2 <= hi; a2 += s.m, a3 -= s.F2) {
      if (a3 > s.a3_max || a3 < -s.a3_max) continue;
      const i128 prod = a2 * a3;
      if (prod > s.B || prod < -s.B) continue;
      const i64 x = static_cast<i64>(a2), y = static_cast<i64>(a3);
      if (s.P2 != 1 && gcd_nonneg(x, s.P2) != 1) continue;
      if (s.P3 != 1 && gcd_nonneg(y, s.P3) != 1) continue;
      f(x, y);
    }
  };
  if (w.hole_lo > w.hole_hi) {
    run(w.lo, w.hi);
  } else {
    run(w.lo, std::min(w.hi, w.hole_lo - 1));
    run(std::max(w.lo, w.hole_hi + 1), w.hi);
  }
}

}  // namespace detail

/// All eta in Z_{>0}^6 with pairwise Dynkin coprimality and
/// eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2 <= B, in lexicographic loop order.
std::vector<Eta> admissible_etas(i64 B);

/// Exact number of (alpha2, alpha3) completing (eta, alpha1) to a valid point of height <= B.
/// Throws std::invalid_argument when the preconditions on (eta, alpha1, B) fail.
std::uint64_t count_alpha23(const Eta& eta, i64 alpha1, i64 B);

/// N(B): number of points of S° of height <= B, via the torsor. `threads` workers
/// pull eta-tuples from a shared list; the result does not depend on `threads`.
std::uint64_t count_torsor(i64 B, unsigned threads = 1);

/// Visits every valid torsor point of height <= B (single-threaded, deterministic order).
template <class F>
void for_each_torsor_point(i64 B, F&& f) {
  for (const Eta& eta : admissible_etas(B)) {
    const auto s = detail::make_fiber_setup(eta, B);
    for (i64 a1 = -s.a1_max; a1 <= s.a1_max; ++a1) {
      if (gcd_nonneg(a1, s.P1) != 1) continue;
      detail::for_each_alpha23(s, a1, [&](i64 a2, i64 a3) { f(TorsorPoint{eta, {a1, a2, a3}}); });
    }
  }
}

/// One record per B (strictly ascending, nonempty). The torsor method makes a single
/// pass at max(B) and buckets points by height; every record carries that pass's time.
std::vector<CountRecord> count_series(const std::vector<i64>& Bs, Method method, unsigned threads = 1);

}  // namespace d4count
