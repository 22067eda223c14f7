#include "d4count/densities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "d4count/archimedean.hpp"

namespace d4count {

namespace {

constexpr int kWeight[6] = {4, 2, 3, 3, 2, 2};
constexpr unsigned bit(int eta_index) { return 1u << (eta_index - 1); }

// Neumaier's compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

std::set<i64> primes_of(const Eta& eta) {
  std::set<i64> ps;
  for (i64 v : eta) {
    if (v < 1) throw std::invalid_argument("eta entries must be positive");
    for (i64 p : prime_divisors(v)) ps.insert(p);
  }
  return ps;
}

unsigned mask_of(i64 p, const Eta& eta) {
  unsigned mask = 0;
  for (int i = 0; i < 6; ++i)
    if (eta[i] % p == 0) mask |= 1u << i;
  return mask;
}

i64 mod(i128 a, i64 m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

}  // namespace

const char* to_string(PrimeCase c) {
  switch (c) {
    case PrimeCase::case0: return "0";
    case PrimeCase::i: return "i";
    case PrimeCase::ii: return "ii";
    case PrimeCase::iii: return "iii";
    case PrimeCase::iv: return "iv";
    case PrimeCase::v: return "v";
    case PrimeCase::vi: return "vi";
    case PrimeCase::vii: return "vii";
    case PrimeCase::viii: return "viii";
    case PrimeCase::ix: return "ix";
    case PrimeCase::x: return "x";
    case PrimeCase::xi: return "xi";
    case PrimeCase::forbidden: return "forbidden";
  }
  return "?";
}

PrimeCase classify_mask(unsigned mask) {
  switch (mask) {
    case 0: return PrimeCase::case0;
    case bit(1): return PrimeCase::i;
    case bit(2): return PrimeCase::ii;
    case bit(3): return PrimeCase::iii;
    case bit(4): return PrimeCase::iv;
    case bit(5): return PrimeCase::v;
    case bit(6): return PrimeCase::vi;
    case bit(1) | bit(2): return PrimeCase::vii;
    case bit(1) | bit(3): return PrimeCase::viii;
    case bit(1) | bit(4): return PrimeCase::ix;
    case bit(3) | bit(5): return PrimeCase::x;
    case bit(4) | bit(6): return PrimeCase::xi;
    default: return PrimeCase::forbidden;
  }
}

PrimeCase classify_prime(i64 p, const Eta& eta) { return classify_mask(mask_of(p, eta)); }

Rational theta1_local(PrimeCase c, i64 p) {
  switch (c) {
    case PrimeCase::forbidden: return Rational(0);
    case PrimeCase::case0:
    case PrimeCase::v:
    case PrimeCase::vi: return Rational(1);
    case PrimeCase::i: return Rational(p - 2, p);
    default: return Rational(p - 1, p);
  }
}

Rational theta2_local(PrimeCase c, i64 p) {
  switch (c) {
    case PrimeCase::forbidden: return Rational(0);
    case PrimeCase::case0:
    case PrimeCase::ii: return Rational(1);  // alpha1 may share primes with eta2 only
    default: return Rational(p - 1, p);
  }
}

Rational theta1(const Eta& eta) {
  Rational r(1);
  for (i64 p : primes_of(eta)) r *= theta1_local(classify_prime(p, eta), p);
  return r;
}

Rational theta2(const Eta& eta) {
  // Product over the distinct primes of eta1 eta3 eta4 eta5 eta6.
  std::set<i64> ps;
  for (int i : {0, 2, 3, 4, 5})
    for (i64 p : prime_divisors(eta[i])) ps.insert(p);
  Rational r(1);
  for (i64 p : ps) r *= Rational(p - 1, p);
  return r;
}

Rational theta(const Eta& eta) {
  if (!eta_coprimality_holds(eta)) return Rational(0);
  return theta1(eta) * theta2(eta);
}

ResidueCount admissible_c3_count(const Eta& eta, i64 alpha1) {
  if (!eta_coprimality_holds(eta)) throw std::invalid_argument("admissible_c3_count: eta violates Dynkin coprimality");
  const i128 P1 = static_cast<i128>(eta[0]) * eta[2] * eta[3] * eta[4] * eta[5];
  if (gcd_nonneg(static_cast<i128>(alpha1), P1) != 1)
    throw std::invalid_argument("admissible_c3_count: gcd(alpha1, eta1 eta3 eta4 eta5 eta6) != 1");

  const i128 F2 = checked_mul(eta[2], checked_mul(eta[4], eta[4]));
  const i64 m = narrow64(checked_mul(eta[3], checked_mul(eta[5], eta[5])));
  const i64 c1 = mod_inverse(narrow64(F2 % m), m);
  const i128 c1F2 = checked_mul(c1, F2);
  const i128 c2 = (c1F2 - 1) / m;  // c1 F2 = 1 + c2 m
  if (c1F2 - 1 != c2 * m) throw std::logic_error("admissible_c3_count: inverse check failed");
  const i128 K = checked_mul(eta[1], checked_mul(static_cast<i128>(alpha1), alpha1));  // eta2 alpha1^2

  ResidueCount rc{1, 1};
  for (i64 p : primes_of(eta)) {
    const bool need2 = (eta[0] % p == 0) || (eta[1] % p == 0) || (eta[2] % p == 0) || (eta[3] % p == 0) ||
                       (eta[5] % p == 0);
    const bool need3 = (eta[0] % p == 0) || (eta[1] % p == 0) || (eta[2] % p == 0) || (eta[3] % p == 0) ||
                       (eta[4] % p == 0);
    const i64 a2_const = mod(-mod(c1, p) * static_cast<i128>(mod(K, p)), p);
    const i64 a3_const = mod(static_cast<i128>(mod(c2, p)) * mod(K, p), p);
    const i64 m_p = mod(m, p), F2_p = mod(F2, p);
    i64 allowed = 0;
    for (i64 c3 = 0; c3 < p; ++c3) {
      const i64 a2 = mod(static_cast<i128>(c3) * m_p + a2_const, p);
      const i64 a3 = mod(a3_const - static_cast<i128>(c3) * F2_p, p);
      if (need2 && a2 == 0) continue;
      if (need3 && a3 == 0) continue;
      ++allowed;
    }
    rc.allowed = narrow64(checked_mul(rc.allowed, allowed));
    rc.modulus = narrow64(checked_mul(rc.modulus, p));
  }
  return rc;
}

double local_factor(i64 p, double s) {
  if (s < 0) throw std::invalid_argument("local_factor: s must be >= 0");
  const double pd = static_cast<double>(p);
  const double q = 1.0 - 1.0 / pd;
  const double P4 = 1.0 / std::expm1((4 * s + 1) * std::log(pd));
  const double P3 = 1.0 / std::expm1((3 * s + 1) * std::log(pd));
  const double P2 = 1.0 / std::expm1((2 * s + 1) * std::log(pd));
  // One term per pattern: i; ii, v, vi; iii, iv; vii; viii, ix; x, xi.
  return 1.0 + q * P4 * ((1.0 - 2.0 / pd) + q * P2 + 2 * q * P3) + 3 * q * P2 + 2 * q * q * P3 +
         2 * q * q * P3 * P2;
}

double local_factor_bruteforce(i64 p, double s, unsigned emax) {
  if (s < 0) throw std::invalid_argument("local_factor_bruteforce: s must be >= 0");
  if (emax < 1) throw std::invalid_argument("local_factor_bruteforce: emax must be >= 1");
  const double lp = std::log(static_cast<double>(p));
  // Patterns touching three or more eta's are forbidden, so only supports of size <= 2 remain.
  CompensatedSum total;
  total.add(1.0);  // eta = (1, ..., 1)
  for (unsigned mask = 1; mask < 64; ++mask) {
    const PrimeCase c = classify_mask(mask);
    if (c == PrimeCase::forbidden) continue;
    const double th = boost::rational_cast<double>(theta1_local(c, p) * theta2_local(c, p));
    int idx[2] = {-1, -1};
    int k = 0;
    for (int i = 0; i < 6; ++i)
      if (mask & (1u << i)) idx[k++] = i;
    auto weight = [&](int i, unsigned e) { return std::exp(-static_cast<double>(e) * (kWeight[i] * s + 1) * lp); };
    if (k == 1) {
      for (unsigned e = emax; e >= 1; --e) total.add(th * weight(idx[0], e));
    } else {
      for (unsigned e1 = emax; e1 >= 1; --e1)
        for (unsigned e2 = emax; e2 >= 1; --e2) total.add(th * weight(idx[0], e1) * weight(idx[1], e2));
    }
  }
  return total.value();
}

double local_factor_tail_bound(i64 p, unsigned emax) {
  // Each omitted term is at most p^{-(e1+...)} with some exponent > emax:
  // 6 single supports and 5 pairs.
  const double pd = static_cast<double>(p);
  const double tail = std::pow(pd, -static_cast<double>(emax)) / (pd - 1);
  return 6 * tail + 10 * tail / (pd - 1);
}

EulerProduct euler_product_G0(i64 P) {
  if (P < 2) throw std::invalid_argument("euler_product_G0: P must be >= 2");
  const auto primes = primes_up_to(P);
  // Sum logs in increasing-magnitude order (large primes first).
  CompensatedSum log_sum;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const double pd = static_cast<double>(*it);
    log_sum.add(6 * std::log1p(-1.0 / pd) + std::log1p(6.0 / pd + 1.0 / (pd * pd)));
  }
  const double value = std::exp(log_sum.value());

  // sum_{p > P} 1/p^2 = -pi(P)/P^2 + 2 int_P^inf pi(x) x^{-3} dx, with
  // pi(x) <= x/ln x (1 + 1.2762/ln x) for x > 1 (Dusart).
  const double Pd = static_cast<double>(P), lnP = std::log(Pd);
  const double tail_sum = 2.0 / (Pd * lnP) + 2.0 * 1.2762 / (Pd * lnP * lnP) - static_cast<double>(primes.size()) / (Pd * Pd);
  const double tail_bound = value * std::expm1(kEulerLogConstant * tail_sum);
  return {value, tail_bound};
}

Rational delta_coeff_local(i64 p, unsigned e) {
  Rational total(0);
  unsigned k[6] = {0, 0, 0, 0, 0, 0};
  auto rec = [&](auto&& self, int level, unsigned remaining) -> void {
    if (level == 6) {
      if (remaining != 0) return;
      unsigned mask = 0, sum = 0;
      for (int i = 0; i < 6; ++i) {
        if (k[i]) mask |= 1u << i;
        sum += k[i];
      }
      const PrimeCase c = classify_mask(mask);
      if (c == PrimeCase::forbidden) return;
      total += theta1_local(c, p) * theta2_local(c, p) / Rational(narrow64(checked_pow(p, sum)));
      return;
    }
    for (unsigned j = 0; j * kWeight[level] <= remaining; ++j) {
      k[level] = j;
      self(self, level + 1, remaining - j * kWeight[level]);
    }
    k[level] = 0;
  };
  rec(rec, 0, e);
  return total;
}

namespace {

Rational delta_from_factorization(const Factorization& f) {
  Rational r(1);
  for (const auto& pp : f) {
    if (pp.exponent == 1) return Rational(0);  // no weight combination of (4,2,3,3,2,2) equals 1
    r *= delta_coeff_local(pp.prime, pp.exponent);
    if (r.numerator() == 0) return r;
  }
  return r;
}

// Cached local factors; n ranges over many integers sharing prime powers.
class DeltaTable {
 public:
  explicit DeltaTable(i64 limit) : sieve_(limit) {}
  double delta_over_cuberoot(i64 n) {
    double r = 1.0;
    for (const auto& pp : sieve_.factorize(n)) {
      if (pp.exponent == 1) return 0.0;
      auto key = std::make_pair(pp.prime, pp.exponent);
      auto it = cache_.find(key);
      if (it == cache_.end())
        it = cache_.emplace(key, boost::rational_cast<double>(delta_coeff_local(pp.prime, pp.exponent))).first;
      r *= it->second;
    }
    return r;
  }

 private:
  SpfSieve sieve_;
  std::map<std::pair<i64, unsigned>, double> cache_;
};

}  // namespace

Rational delta_coeff(i64 n) {
  if (n < 1) throw std::invalid_argument("delta_coeff: n must be >= 1");
  return delta_from_factorization(factorize(n));
}

Rational delta_coeff(i64 n, const SpfSieve& sieve) {
  if (n < 1) throw std::invalid_argument("delta_coeff: n must be >= 1");
  return delta_from_factorization(sieve.factorize(n));
}

double M_partial(i64 t) {
  if (t < 1) throw std::invalid_argument("M_partial: t must be >= 1");
  DeltaTable table(t);
  CompensatedSum sum;
  for (i64 n = 1; n <= t; ++n) {
    const double d = table.delta_over_cuberoot(n);
    if (d != 0.0) sum.add(std::cbrt(static_cast<double>(n)) * d);
  }
  return sum.value();
}

double approx_count(i64 B, const G2Evaluator& g2) {
  if (B < 1) throw std::invalid_argument("approx_count: B must be >= 1");
  DeltaTable table(B);
  const double Bd = static_cast<double>(B);
  CompensatedSum sum;
  for (i64 n = 1; n <= B; ++n) {
    const double d = table.delta_over_cuberoot(n);
    if (d == 0.0) continue;
    const double nd = static_cast<double>(n);
    sum.add(std::cbrt(nd) * d * g2(std::cbrt(nd / Bd)));
  }
  return std::cbrt(Bd * Bd) * sum.value();
}

double approx_count(i64 B) {
  return approx_count(B, [](double v) { return g2(v, 1e-9).value; });
}

double fiber_main_term(const Eta& eta, i64 alpha1, i64 B) {
  const auto X = x_variables(eta, B);
  const double m = static_cast<double>(eta[3]) * static_cast<double>(eta[5]) * static_cast<double>(eta[5]);
  return boost::rational_cast<double>(theta1(eta)) * X.X2 / m * g1(static_cast<double>(alpha1) / X.X1, X.X0);
}

}  // namespace d4count
