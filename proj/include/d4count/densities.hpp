#pragma once

// Non-archimedean densities: the local divisibility patterns of a prime across
// eta1..eta6, the local densities theta1/theta2, the Euler factor F_p, the
// product G(0), and the Dirichlet coefficients Delta(n) feeding the main term.

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <utility>

#include "d4count/intkit.hpp"
#include "d4count/torsor.hpp"

namespace d4count {

using Rational = boost::rational<i64>;

/// Divisibility pattern of a prime over (eta1..eta6). Exactly 12 patterns are
/// compatible with the Dynkin coprimality; all others are `forbidden`.
enum class PrimeCase { case0, i, ii, iii, iv, v, vi, vii, viii, ix, x, xi, forbidden };

const char* to_string(PrimeCase c);

/// Bit k set <=> p divides eta_{k+1}.
PrimeCase classify_mask(unsigned mask);
PrimeCase classify_prime(i64 p, const Eta& eta);

/// Local factors at p for a given pattern (0 for forbidden).
Rational theta1_local(PrimeCase c, i64 p);
Rational theta2_local(PrimeCase c, i64 p);

Rational theta1(const Eta& eta);
Rational theta2(const Eta& eta);
/// theta1 * theta2 when the eta coprimality holds, else 0.
Rational theta(const Eta& eta);

struct ResidueCount {
  i64 allowed;
  i64 modulus;  // product of the distinct primes dividing eta1...eta6
};

/// Residues c3 modulo rad(eta1...eta6) for which
///   alpha2 = c3 eta4 eta6^2 - c1 alpha1^2 eta2,  alpha3 = c2 alpha1^2 eta2 - c3 eta3 eta5^2
/// meet the alpha2/alpha3 coprimality at every prime of the modulus. Counted prime by
/// prime (the conditions at p only see c3 mod p), then combined by CRT.
ResidueCount admissible_c3_count(const Eta& eta, i64 alpha1);

/// F_p(s + 1/3), the Euler factor of sum_eta theta(eta) / (eta1^{4s+1} eta2^{2s+1} ... eta6^{2s+1}).
double local_factor(i64 p, double s);

/// The same factor as a truncated lattice sum over eta_i in {1, p, ..., p^emax}.
double local_factor_bruteforce(i64 p, double s, unsigned emax);

/// Upper bound on what local_factor_bruteforce omits by truncating at emax.
double local_factor_tail_bound(i64 p, unsigned emax);

struct EulerProduct {
  double value;       // prod_{p <= P} (1 - 1/p)^6 (1 + 6/p + 1/p^2)
  double tail_bound;  // |G(0) - value| <= tail_bound
};

/// |log((1-1/p)^6 (1+6/p+1/p^2))| <= kEulerLogConstant / p^2 for every prime p.
/// p^2 |log| increases towards 20 from below (checked numerically in the tests).
inline constexpr double kEulerLogConstant = 20.0;

EulerProduct euler_product_G0(i64 P);

/// Delta(n) / n^{1/3} = sum over eta with eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2 = n
/// of theta(eta) / (eta1 ... eta6). Multiplicative in n.
Rational delta_coeff(i64 n);
Rational delta_coeff(i64 n, const SpfSieve& sieve);

/// Local part of delta_coeff at p^e.
Rational delta_coeff_local(i64 p, unsigned e);

/// sum_{n <= t} n^{1/3} delta_coeff(n)
double M_partial(i64 t);

using G2Evaluator = std::function<double(double)>;

/// B^{2/3} sum_{n <= B} Delta(n) g2((n/B)^{1/3}).
double approx_count(i64 B, const G2Evaluator& g2);

/// Same, with the archimedean g2 at tolerance 1e-9.
double approx_count(i64 B);

/// theta1(eta) X2 / (eta4 eta6^2) g1(alpha1/X1, X0): the main term of count_alpha23.
double fiber_main_term(const Eta& eta, i64 alpha1, i64 B);

}  // namespace d4count
