#include "d4count/intkit.hpp"

#include <cmath>
#include <numeric>

namespace d4count {

i128 checked_pow(i128 base, unsigned exp) {
  i128 r = 1;
  for (unsigned k = 0; k < exp; ++k) r = checked_mul(r, base);
  return r;
}

i64 gcd_nonneg(i64 a, i64 b) {
  if (a == std::numeric_limits<i64>::min() || b == std::numeric_limits<i64>::min())
    return narrow64(gcd_nonneg(static_cast<i128>(a), static_cast<i128>(b)));
  return std::gcd(a, b);
}

i128 gcd_nonneg(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

ExtendedGcd extended_gcd(i64 a, i64 b) {
  i128 old_r = a, r = b;
  i128 old_s = 1, s = 0;
  i128 old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {narrow64(old_r), narrow64(old_s), narrow64(old_t)};
}

i64 mod_inverse(i64 a, i64 m) {
  if (m < 1) throw std::domain_error("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  const auto eg = extended_gcd(a % m, m);
  if (eg.g != 1) throw std::domain_error("mod_inverse: argument is not invertible modulo m");
  i64 r = eg.x % m;
  if (r < 0) r += m;
  return r;
}

Factorization factorize(i64 n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  Factorization out;
  auto take = [&](i64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  take(2);
  take(3);
  for (i64 p = 5; p <= n / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

unsigned distinct_prime_count(i64 n) { return static_cast<unsigned>(factorize(n).size()); }

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (i64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (i64 q = p * p; q <= n; q += p) composite[q] = true;
  }
  return out;
}

SpfSieve::SpfSieve(i64 limit) : limit_(limit < 1 ? 1 : limit), spf_(static_cast<std::size_t>(limit_) + 1, 0) {
  if (limit_ > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("SpfSieve: limit too large");
  for (i64 p = 2; p <= limit_; ++p) {
    if (spf_[p] != 0) continue;
    spf_[p] = static_cast<std::uint32_t>(p);
    for (i64 q = p * p; q <= limit_; q += p)
      if (spf_[q] == 0) spf_[q] = static_cast<std::uint32_t>(p);
  }
}

Factorization SpfSieve::factorize(i64 n) const {
  if (n < 1) throw std::invalid_argument("SpfSieve::factorize: n must be positive");
  if (n > limit_) return d4count::factorize(n);
  Factorization out;
  while (n > 1) {
    const i64 p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

}  // namespace d4count
