#include "d4count/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "d4count/archimedean.hpp"
#include "d4count/counter.hpp"
#include "d4count/densities.hpp"
#include "d4count/surface.hpp"
#include "d4count/torsor.hpp"

namespace d4count {

namespace {

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream s;
  s.precision(17);
  (s << ... << xs);
  return s.str();
}

i64 uniform(std::mt19937_64& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

Eta random_admissible_eta(std::mt19937_64& rng, i64 max_entry) {
  for (;;) {
    Eta eta;
    for (auto& e : eta) e = uniform(rng, 1, max_entry);
    if (eta_coprimality_holds(eta)) return eta;
  }
}

}  // namespace

std::vector<CheckResult> verify_geometry(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opt.seed);

  const std::vector<Vec5> base = {{0, 1, 0, 0, 0},  {1, 1, 0, -1, -1}, {-1, 1, 0, 1, -1}, {0, 1, 1, -1, 0},
                                  {0, 1, -1, -1, 0}, {-1, 1, 1, 0, 0}, {-1, 1, -1, 0, 0}};
  std::vector<SurfacePoint> expected;
  for (const auto& x : base) expected.push_back(canonicalize(x));
  std::sort(expected.begin(), expected.end());
  const auto b1 = oracle_count(1, true);
  out.push_back(check("height-1 points", b1.count == 7 && b1.points == expected, cat("count ", b1.count)));

  // psi/phi are mutually inverse on the interior.
  unsigned bad = 0, tried = 0;
  while (tried < opt.random_cases) {
    const i64 t = uniform(rng, -50, 50), u = uniform(rng, -50, 50), v = uniform(rng, 1, 50);
    if (std::gcd(std::gcd(t, u), v) != 1) continue;
    ++tried;
    const SurfacePoint p = psi_param(t, u, v);
    const PlaneTriple back = phi_project(p);
    if (!on_surface(p.x) || back.t != t || back.u != u || back.v != v) ++bad;
  }
  out.push_back(check("psi/phi round trip", bad == 0, cat(bad, " failures in ", tried)));

  // Torsor solutions land on the surface.
  bad = 0;
  for (unsigned k = 0; k < opt.random_cases; ++k) {
    Eta eta;
    for (auto& e : eta) e = uniform(rng, 1, 8);
    const i64 m = eta[3] * eta[5] * eta[5], F = eta[2] * eta[4] * eta[4];
    if (std::gcd(m, F) != 1) {
      --k;
      continue;
    }
    const i64 a1 = uniform(rng, -1000, 1000);
    const i64 c1 = mod_inverse(F % m, m);
    const i128 K = static_cast<i128>(eta[1]) * a1 * a1;
    i128 r = (-static_cast<i128>(c1) * (K % m)) % m;
    const i64 a2 = static_cast<i64>(r) + m * uniform(rng, -1000, 1000);
    const i128 rest = -(K + static_cast<i128>(F) * a2);
    const i64 a3 = narrow64(rest / m);
    if (rest % m != 0 || torsor_form(eta, {a1, a2, a3}) != 0) {
      ++bad;
      continue;
    }
    const auto raw = psi_raw(eta, {a1, a2, a3});
    Vec5 x;
    for (int i = 0; i < 5; ++i) x[i] = narrow64(raw[i]);
    const auto q = evaluate_forms(x);
    if (q.q1 != 0 || q.q2 != 0) ++bad;
  }
  out.push_back(check("pullback identity", bad == 0, cat(bad, " failures in ", opt.random_cases)));
  return out;
}

std::vector<CheckResult> verify_bijection(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::vector<i64> mismatches;
  for (i64 B = 1; B <= opt.B; ++B)
    if (count_torsor(B) != oracle_count(B).count) mismatches.push_back(B);
  out.push_back(check(cat("torsor count = oracle count for B <= ", opt.B), mismatches.empty(),
                      mismatches.empty() ? "" : cat("first mismatch at B = ", mismatches.front())));

  const auto points = oracle_count(opt.B, true).points;
  unsigned bad = 0;
  for (const auto& p : points)
    if (psi_map(lift(p)) != p) ++bad;
  out.push_back(check("psi_map(lift(p)) = p", bad == 0, cat(bad, " failures in ", points.size())));

  bad = 0;
  std::uint64_t visited = 0;
  for_each_torsor_point(opt.B, [&](const TorsorPoint& t) {
    ++visited;
    if (lift(psi_map(t)) != t) ++bad;
  });
  out.push_back(check("lift(psi_map(T)) = T", bad == 0 && visited == points.size(),
                      cat(bad, " failures in ", visited, " torsor points, ", points.size(), " surface points")));
  return out;
}

std::vector<CheckResult> verify_densities(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opt.seed);

  unsigned bad = 0;
  std::string first;
  for (unsigned k = 0; k < opt.random_cases; ++k) {
    const Eta eta = random_admissible_eta(rng, 50);
    const i64 P1 = eta[0] * eta[2] * eta[3] * eta[4] * eta[5];
    i64 a1;
    do a1 = uniform(rng, -10'000, 10'000);
    while (std::gcd(a1, P1) != 1);
    const auto rc = admissible_c3_count(eta, a1);
    if (Rational(rc.allowed, rc.modulus) != theta1(eta)) {
      if (bad++ == 0) first = cat("eta (", eta[0], ",", eta[1], ",", eta[2], ",", eta[3], ",", eta[4], ",", eta[5], ")");
    }
  }
  out.push_back(check("residue density = theta1", bad == 0, bad ? first : cat(opt.random_cases, " cases")));

  double worst = 0.0;
  for (i64 p : primes_up_to(10'000)) {
    const double pd = static_cast<double>(p);
    worst = std::max(worst, std::abs(local_factor(p, 0.0) - (1 + 6 / pd + 1 / (pd * pd))));
  }
  out.push_back(check("local factor at s = 0", worst < 1e-12, cat("max deviation ", worst)));

  bool ok = true;
  double worst_ratio = 0.0;
  for (i64 p : {2, 3, 5, 7})
    for (double s : {0.1, 0.25, 1.0}) {
      const unsigned emax = 60;
      const double diff = std::abs(local_factor(p, s) - local_factor_bruteforce(p, s, emax));
      const double bound = local_factor_tail_bound(p, emax) + 1e-14;
      ok = ok && diff <= bound;
      worst_ratio = std::max(worst_ratio, diff / bound);
    }
  out.push_back(check("local factor vs lattice sum", ok, cat("max diff/bound ", worst_ratio)));

  const auto g_small = euler_product_G0(10'000), g_large = euler_product_G0(1'000'000);
  out.push_back(check("Euler product tail", std::abs(g_small.value - g_large.value) <= g_small.tail_bound,
                      cat("G0(1e4) ", g_small.value, " G0(1e6) ", g_large.value, " bound ", g_small.tail_bound)));
  return out;
}

std::vector<CheckResult> verify_archimedean(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const double g = g2(1.0).value;
  out.push_back(check("g2(1) = 10/3", std::abs(g - 10.0 / 3) < 1e-6, cat("g2(1) = ", g)));
  out.push_back(check("g1(0, 1/4) = 4", g1(0.0, 0.25) == 4.0, cat("g1(0, 1/4) = ", g1(0.0, 0.25))));
  const auto q = omega_infinity(kDefaultOmegaTol);
  const auto mc = omega_infinity_mc(opt.seed, opt.mc_samples);
  const double z = std::abs(q.value - mc.value) / mc.std_error;
  out.push_back(check("omega quadrature vs Monte Carlo", z < 3.0,
                      cat("quadrature ", q.value, " MC ", mc.value, " +- ", mc.std_error, " (", z, " sigma)")));
  return out;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt) {
  if (suite == "geometry") return verify_geometry(opt);
  if (suite == "bijection") return verify_bijection(opt);
  if (suite == "densities") return verify_densities(opt);
  if (suite == "archimedean") return verify_archimedean(opt);
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (auto* f : {verify_geometry, verify_bijection, verify_densities, verify_archimedean}) {
      auto part = f(opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace d4count
