#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace d4count {

using i64 = std::int64_t;
using i128 = __int128;

// Checked 128-bit arithmetic. Any overflow is a hard error: exact counts are
// only as good as the integers they are built from.
inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("d4count: 128-bit multiplication overflow");
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("d4count: 128-bit addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("d4count: 128-bit subtraction overflow");
  return r;
}

inline i128 abs128(i128 a) {
  if (a == std::numeric_limits<i128>::min()) throw std::overflow_error("d4count: abs of minimum 128-bit value");
  return a < 0 ? -a : a;
}

// Narrow to 64 bits, throwing if the value does not fit.
inline i64 narrow64(i128 a) {
  if (a > std::numeric_limits<i64>::max() || a < std::numeric_limits<i64>::min())
    throw std::overflow_error("d4count: value does not fit in 64 bits");
  return static_cast<i64>(a);
}

/// Product of `base^exp` with overflow checking.
i128 checked_pow(i128 base, unsigned exp);

/// Nonnegative gcd with gcd(0, n) = |n| and gcd(0, 0) = 0.
i64 gcd_nonneg(i64 a, i64 b);
i128 gcd_nonneg(i128 a, i128 b);
inline i64 gcd_nonneg(int a, int b) { return gcd_nonneg(i64{a}, i64{b}); }

struct ExtendedGcd {
  i64 g;  // nonnegative
  i64 x;
  i64 y;  // a*x + b*y == g
};

ExtendedGcd extended_gcd(i64 a, i64 b);

/// Inverse of `a` modulo `m` in [0, m). Returns 0 for m == 1.
/// Throws std::domain_error when gcd(a, m) != 1.
i64 mod_inverse(i64 a, i64 m);

struct PrimePower {
  i64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Exact factorization by trial division; n = 1 gives the empty list.
Factorization factorize(i64 n);

/// Distinct primes dividing n, ascending.
std::vector<i64> prime_divisors(i64 n);

/// Number of distinct primes dividing n (omega(1) = 0).
unsigned distinct_prime_count(i64 n);

/// Sieve of Eratosthenes; all primes <= n in ascending order.
std::vector<i64> primes_up_to(i64 n);

/// Smallest-prime-factor table for 0..limit. Immutable after construction,
/// so one instance can be shared across workers.
class SpfSieve {
 public:
  explicit SpfSieve(i64 limit);

  i64 limit() const { return limit_; }
  Factorization factorize(i64 n) const;

 private:
  i64 limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace d4count
