#include <limits>
#include <random>

#include "doctest.h"
#include "d4count/intkit.hpp"
#include "oracles.hpp"

using namespace d4count;

TEST_SUITE("intkit") {
  TEST_CASE("gcd_nonneg") {
    CHECK(gcd_nonneg(12, 18) == 6);
    CHECK(gcd_nonneg(-12, 18) == 6);
    CHECK(gcd_nonneg(0, 5) == 5);
    CHECK(gcd_nonneg(0, -5) == 5);
    CHECK(gcd_nonneg(0, 0) == 0);
    CHECK(gcd_nonneg(static_cast<i128>(0), static_cast<i128>(-7)) == 7);
  }

  TEST_CASE("gcd divides both and is the greatest") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<i64> d(-100'000, 100'000);
    for (int k = 0; k < 2000; ++k) {
      const i64 a = d(rng), b = d(rng);
      const i64 g = gcd_nonneg(a, b);
      if (a == 0 && b == 0) continue;
      REQUIRE(g > 0);
      CHECK(a % g == 0);
      CHECK(b % g == 0);
      const i64 c = std::uniform_int_distribution<i64>(1, 50)(rng);
      CHECK(gcd_nonneg(a * c, b * c) == g * c);
    }
  }

  TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(-3, 7) == 2);
    CHECK(mod_inverse(5, 1) == 0);
    CHECK_THROWS_AS(mod_inverse(4, 8), std::domain_error);
    std::mt19937_64 rng(12);
    for (int k = 0; k < 2000; ++k) {
      const i64 m = std::uniform_int_distribution<i64>(2, 1'000'000)(rng);
      const i64 a = std::uniform_int_distribution<i64>(-10'000'000, 10'000'000)(rng);
      if (gcd_nonneg(a, m) != 1) continue;
      const i64 inv = mod_inverse(a, m);
      CHECK(inv >= 0);
      CHECK(inv < m);
      CHECK((static_cast<i128>(a) * inv % m + m) % m == 1);
    }
  }

  TEST_CASE("checked arithmetic throws on overflow") {
    const i128 big = static_cast<i128>(1) << 100;
    CHECK_THROWS_AS(checked_mul(big, big), std::overflow_error);
    CHECK_THROWS_AS(checked_add(big << 26, big << 26), std::overflow_error);
    CHECK_THROWS_AS(narrow64(big), std::overflow_error);
    CHECK(narrow64(static_cast<i128>(-5)) == -5);
    CHECK(checked_pow(3, 4) == 81);
    CHECK_THROWS_AS(checked_pow(10, 40), std::overflow_error);
  }

  TEST_CASE("factorize") {
    CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
    CHECK(factorize(1).empty());
    CHECK(factorize(97) == Factorization{{97, 1}});
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    for (i64 n = 1; n <= 1'000'000; n += (n < 20'000 ? 1 : 97)) {
      i64 prod = 1;
      for (const auto& pp : factorize(n)) {
        CHECK(oracle::is_prime(pp.prime));
        for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
      }
      REQUIRE(prod == n);
    }
  }

  TEST_CASE("sieve factorization agrees with trial division") {
    const SpfSieve sieve(100'000);
    for (i64 n = 1; n <= 100'000; ++n) REQUIRE(sieve.factorize(n) == factorize(n));
    CHECK(sieve.factorize(1'000'003) == factorize(1'000'003));  // beyond the table
  }

  TEST_CASE("primes_up_to") {
    CHECK(primes_up_to(10) == std::vector<i64>{2, 3, 5, 7});
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(30) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    std::vector<i64> slow;
    for (i64 n = 2; n <= 10'000; ++n)
      if (oracle::is_prime(n)) slow.push_back(n);
    CHECK(primes_up_to(10'000) == slow);
  }
}
