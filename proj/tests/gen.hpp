#pragma once

// Hand-rolled generators for the property tests.

#include <numeric>
#include <random>

#include "d4count/torsor.hpp"

namespace gen {

using d4count::i64;

inline i64 uniform(std::mt19937_64& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Triple {
  i64 t, u, v;
};

// primitive (t, u, v) with v >= 1
inline Triple primitive_triple(std::mt19937_64& rng, i64 r) {
  for (;;) {
    const Triple x{uniform(rng, -r, r), uniform(rng, -r, r), uniform(rng, 1, r)};
    if (std::gcd(std::gcd(x.t, x.u), x.v) == 1) return x;
  }
}

inline d4count::Eta admissible_eta(std::mt19937_64& rng, i64 max_entry) {
  for (;;) {
    d4count::Eta e;
    for (auto& x : e) x = uniform(rng, 1, max_entry);
    if (d4count::eta_coprimality_holds(e)) return e;
  }
}

// alpha1 coprime to eta1 eta3 eta4 eta5 eta6
inline i64 admissible_alpha1(std::mt19937_64& rng, const d4count::Eta& e, i64 r) {
  const i64 P1 = e[0] * e[2] * e[3] * e[4] * e[5];
  for (;;) {
    const i64 a = uniform(rng, -r, r);
    if (std::gcd(a, P1) == 1) return a;
  }
}

// A solution of the torsor equation; coprimality is not imposed.
// Picks eta, alpha1, alpha2 and keeps the draw when alpha3 comes out integral.
inline d4count::TorsorPoint torsor_solution(std::mt19937_64& rng, i64 eta_max, i64 alpha_max) {
  for (;;) {
    d4count::TorsorPoint t;
    for (auto& x : t.eta) x = uniform(rng, 1, eta_max);
    const i64 F2 = t.eta[2] * t.eta[4] * t.eta[4], F3 = t.eta[3] * t.eta[5] * t.eta[5];
    const i64 a1 = uniform(rng, -alpha_max, alpha_max);
    // Steer alpha2 into the right class mod F3 when F2 is invertible there; otherwise rely on luck.
    i64 a2 = uniform(rng, -alpha_max, alpha_max);
    if (std::gcd(F2, F3) == 1 && F3 > 1) {
      const i64 c1 = d4count::mod_inverse(F2, F3);
      const i64 target = ((-(c1 % F3) * ((t.eta[1] % F3) * ((a1 % F3) * (a1 % F3) % F3) % F3)) % F3 + F3) % F3;
      a2 += ((target - a2) % F3 + F3) % F3;
    }
    const __int128 num = -(static_cast<__int128>(t.eta[1]) * a1 * a1 + static_cast<__int128>(F2) * a2);
    if (num % F3 != 0) continue;
    t.alpha = {a1, a2, static_cast<i64>(num / F3)};
    return t;
  }
}

}  // namespace gen
