#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "d4count/archimedean.hpp"
#include "gen.hpp"

using namespace d4count;

namespace {

// Second, independent route: Boost's G-K 61 in u, split at every kink of g1(., v) and at powers of ten.
// The kinks are where a boundary of the t-interval switches between constraints.
double g2_boost(double v, double tol = 1e-12, unsigned depth = 15) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto f = [v](double u) { return g1(u, v); };
  const double lim = std::min(1.0 / (v * v), std::sqrt(2.0 / v));
  std::vector<double> cuts{0.0, lim};
  for (double k2 : {2 * std::sqrt(v), 1 / v - v * v, 1 / v + v * v})
    if (k2 > 0 && std::sqrt(k2) < lim) cuts.push_back(std::sqrt(k2));
  // Bisection depth alone cannot cover several decades of u at small v.
  for (double d = 0.01; d < lim; d *= 10) cuts.push_back(d);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += Rule::integrate(f, cuts[i], cuts[i + 1], depth, tol);
  return 2 * total;
}

// Fraction of a fine t-grid satisfying the three constraints, times the grid span.
double g1_grid(double u, double v, int n) {
  const double span = 1.0 / (v * v), h = 2 * span / n;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const double t = -span + (i + 0.5) * h;
    const double a = t * v + u * u;
    if (std::abs(t * v * v) <= 1 && std::abs(t * a) <= 1 && std::abs(v * a) <= 1) ++inside;
  }
  return inside * h;
}

}  // namespace

TEST_SUITE("archimedean") {
  TEST_CASE("adaptive Gauss-Kronrod basics") {
    auto r = integrate_adaptive([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(r.evaluations == 15);
    r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(r.value - 2.0 / 3) < 1e-9);
    CHECK(r.error_estimate <= 1e-10);
    r = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-13, 1000, {0.3});
    CHECK(r.value == doctest::Approx(0.29).epsilon(1e-13));
    CHECK(integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0, 1e-9).value == 0.0);
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, 1e-12, 600), QuadratureError);
  }

  TEST_CASE("g1 examples") {
    CHECK(g1(0, 1) == 2.0);
    CHECK(g1(0, 0.25) == 4.0);
    CHECK_THROWS_AS(g1(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g1(1, -1), std::invalid_argument);
  }

  TEST_CASE("g1 structural properties") {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 20'000; ++k) {
      const double v = gen::uniform_real(rng, 1e-4, 1.0), u = gen::uniform_real(rng, -50, 50);
      const double g = g1(u, v);
      CHECK(g >= 0);
      CHECK(g <= 2 / (v * v) * (1 + 1e-15));
      CHECK(g == g1(-u, v));
    }
    for (double v = 0.01; v <= 1.0; v += 0.01) CHECK(g1(0, v) == doctest::Approx(2 / std::sqrt(v)).epsilon(1e-14));
  }

  TEST_CASE("g1 closed form against a fine t-grid on 100 x 100 points") {
    const int n = 20'000;
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const double u = -3 + 6 * (i + 0.5) / 100, v = (j + 1) / 100.0;
        const double h = 2 / (v * v) / n;
        CHECK(std::abs(g1(u, v) - g1_grid(u, v, n)) <= 4 * h);
      }
  }

  TEST_CASE("g2") {
    CHECK(std::abs(g2(1.0).value - 10.0 / 3) < 1e-6);
    for (double v : {0.1, 0.5, 1.0}) CHECK(g2(v).value > 0);
    CHECK_THROWS_AS(g2(0.0), std::invalid_argument);
    CHECK_THROWS_AS(g2(1.5), std::invalid_argument);
    CHECK_THROWS_AS(g2(0.5, -1), std::invalid_argument);
  }

  TEST_CASE("g2 from two quadrature schemes") {
    const double own = g2(0.25, 1e-10).value, other = g2_boost(0.25);
    CHECK(std::abs(own - other) < 1e-9);
    CHECK(own == doctest::Approx(12.8805381929074).epsilon(1e-10));  // frozen
    for (double v : {1e-6, 1e-3, 0.05, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0}) {
      const auto r = g2(v, 1e-8);
      CHECK(std::abs(r.value - g2_boost(v)) < 1e-7 * std::max(1.0, r.value));
    }
  }

  TEST_CASE("omega_infinity") {
    const auto w = omega_infinity(kDefaultOmegaTol);
    CHECK(std::isfinite(w.value));
    CHECK(w.value > 0);
    CHECK(w.error_estimate <= kDefaultOmegaTol);
    CHECK(w.value == doctest::Approx(31.586390218673344).epsilon(1e-6));  // frozen
    const auto again = omega_infinity(kDefaultOmegaTol);
    CHECK(again.value == w.value);
    CHECK(again.error_estimate == w.error_estimate);
    const double upper_half = omega_integral(0.5, 1.0, 1e-6).value;
    CHECK(upper_half > 0);
    CHECK(w.value > upper_half);
    CHECK(omega_integral(0.0, 0.5, 1e-6).value + upper_half == doctest::Approx(w.value).epsilon(1e-6));
    CHECK_THROWS_AS(omega_infinity(0), std::invalid_argument);
    CHECK_THROWS_AS(omega_integral(0.5, 0.4, 1e-6), std::invalid_argument);
  }

  TEST_CASE("omega_infinity against a Boost outer rule") {
    auto f = [](double w) { return w == 0 ? 0.0 : 6 * w * g2_boost(w * w, 1e-10, 8); };
    const double other = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 10, 1e-7);
    CHECK(std::abs(omega_infinity(1e-7).value - other) < 1e-5);
  }

  TEST_CASE("Monte Carlo estimate") {
    const auto a = omega_infinity_mc(7, 200'000), b = omega_infinity_mc(7, 200'000);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = omega_infinity_mc(7, 400'000);
    CHECK(c.std_error / a.std_error == doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.2));
    const auto big = omega_infinity_mc(3, 2'000'000);
    CHECK(std::abs(big.value - omega_infinity().value) < 3 * big.std_error);
    CHECK_THROWS_AS(omega_infinity_mc(1, 999), std::invalid_argument);
  }
}
