#include "d4count/counter.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "d4count/surface.hpp"

namespace d4count {

const char* to_string(Method m) { return m == Method::torsor ? "torsor" : "oracle"; }

Method method_from_string(const std::string& s) {
  if (s == "torsor") return Method::torsor;
  if (s == "oracle") return Method::oracle;
  throw std::invalid_argument("unknown counting method: " + s);
}

namespace detail {

namespace {

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 isqrt(i128 n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  i128 x = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (x > 0 && x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

i64 monomial(const Eta& e, int n1, int n2, int n3, int n4, int n5, int n6) {
  const i128 r = checked_mul(
      checked_mul(checked_mul(checked_pow(e[0], n1), checked_pow(e[1], n2)),
                  checked_mul(checked_pow(e[2], n3), checked_pow(e[3], n4))),
      checked_mul(checked_pow(e[4], n5), checked_pow(e[5], n6)));
  return narrow64(r);
}

// Roots of F2 a^2 + K a + c = 0 (c != 0, real roots assumed), sorted.
std::pair<long double, long double> stable_roots(long double F2, long double K, long double c) {
  const long double disc = K * K - 4 * F2 * c;
  const long double sq = std::sqrt(disc);
  const long double q = -(K + (K >= 0 ? sq : -sq)) / 2;
  long double r1 = q / F2, r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

i128 clamp_to_i128(long double x, i128 lo, i128 hi) {
  if (!(x > static_cast<long double>(lo))) return lo;
  if (!(x < static_cast<long double>(hi))) return hi;
  return static_cast<i128>(x);
}

}  // namespace

FiberSetup make_fiber_setup(const Eta& eta, i64 B) {
  if (B < 1 || B > kMaxCountBound) throw std::invalid_argument("fiber setup: B out of range");
  FiberSetup s{};
  s.eta = eta;
  s.B = B;
  s.E = monomial(eta, 4, 2, 3, 3, 2, 2);
  if (s.E > B) throw std::invalid_argument("fiber setup: eta monomial exceeds B");
  s.A = monomial(eta, 2, 1, 2, 1, 2, 0);
  s.D = monomial(eta, 3, 2, 2, 2, 1, 1);
  s.C = monomial(eta, 2, 1, 1, 2, 0, 2);
  s.F2 = monomial(eta, 0, 0, 1, 0, 2, 0);
  s.m = monomial(eta, 0, 0, 0, 1, 0, 2);
  s.c1 = mod_inverse(s.F2 % s.m, s.m);
  s.P1 = monomial(eta, 1, 0, 1, 1, 1, 1);
  s.P2 = monomial(eta, 1, 1, 1, 1, 0, 1);
  s.P3 = monomial(eta, 1, 1, 1, 1, 1, 0);
  s.a2_max = B / s.A;
  s.a3_max = B / s.C;
  const i128 root = isqrt(checked_mul(checked_mul(2, B), s.E));
  s.a1_max = std::min<i64>(B / s.D, narrow64(root / s.D));
  return s;
}

Alpha2Window alpha2_window(const FiberSetup& s, i128 K) {
  Alpha2Window w{0, -1, 1, 0};
  // |x0| <= B and |x3| <= B; the latter is |K + F2 a2| <= a3_max * m.
  const i128 a3m = static_cast<i128>(s.a3_max) * s.m;
  i128 lo = std::max<i128>(-s.a2_max, ceil_div(-K - a3m, s.F2));
  i128 hi = std::min<i128>(s.a2_max, floor_div(-K + a3m, s.F2));
  if (lo > hi) return w;
  // Now |K| <= 2B, so the quadratic below is far from overflowing.
  const i128 Bm = static_cast<i128>(s.B) * s.m;
  auto f = [&](i128 a) { return checked_add(checked_mul(checked_mul(s.F2, a), a), checked_mul(K, a)); };

  // |x4| <= B: f(a2) = F2 a2^2 + K a2 in [-Bm, Bm]. Outer region first (superset, margin 2).
  const long double F2d = static_cast<long double>(s.F2), Kd = static_cast<long double>(K);
  const auto [r_lo, r_hi] = stable_roots(F2d, Kd, -static_cast<long double>(Bm));
  lo = std::max(lo, clamp_to_i128(std::floor(r_lo) - 2, lo - 1, hi + 1));
  hi = std::min(hi, clamp_to_i128(std::ceil(r_hi) + 2, lo - 1, hi + 1));
  w.lo = narrow64(lo);
  w.hi = narrow64(hi);
  if (lo > hi) return w;

  // Hole where f < -Bm; endpoints are verified exactly, convexity covers the interior.
  if (Kd * Kd - 4 * F2d * static_cast<long double>(Bm) > 0) {
    const auto [s_lo, s_hi] = stable_roots(F2d, Kd, static_cast<long double>(Bm));
    i128 h_lo = clamp_to_i128(std::ceil(s_lo) + 2, lo - 1, hi + 1);
    i128 h_hi = clamp_to_i128(std::floor(s_hi) - 2, lo - 1, hi + 1);
    while (h_lo <= h_hi && f(h_lo) >= -Bm) ++h_lo;
    while (h_lo <= h_hi && f(h_hi) >= -Bm) --h_hi;
    if (h_lo <= h_hi) {
      w.hole_lo = narrow64(h_lo);
      w.hole_hi = narrow64(h_hi);
    }
  }
  return w;
}

}  // namespace detail

namespace {
// exponent of eta_i in the height monomial eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2
constexpr int kWeight[6] = {4, 2, 3, 3, 2, 2};
}  // namespace

std::vector<Eta> admissible_etas(i64 B) {
  if (B < 1) throw std::invalid_argument("admissible_etas: B must be >= 1");
  std::vector<Eta> out;
  Eta e{1, 1, 1, 1, 1, 1};
  // Depth-first over eta1..eta6 with the partial monomial and the pairwise
  // coprimality of already fixed variables as pruning.
  auto rec = [&](auto&& self, int level, i128 partial) -> void {
    if (level == 6) {
      out.push_back(e);
      return;
    }
    for (i64 v = 1;; ++v) {
      const i128 next = checked_mul(partial, checked_pow(v, kWeight[level]));
      if (next > B) break;
      bool ok = true;
      for (int j = 0; j < level && ok; ++j)
        if (!eta_adjacent(level, j) && gcd_nonneg(v, e[j]) != 1) ok = false;
      if (!ok) continue;
      e[level] = v;
      self(self, level + 1, next);
    }
    e[level] = 1;
  };
  rec(rec, 0, 1);
  return out;
}

std::uint64_t count_alpha23(const Eta& eta, i64 alpha1, i64 B) {
  for (i64 v : eta)
    if (v < 1) throw std::invalid_argument("count_alpha23: eta entries must be positive");
  if (!eta_coprimality_holds(eta)) throw std::invalid_argument("count_alpha23: eta violates Dynkin coprimality");
  const auto s = detail::make_fiber_setup(eta, B);
  if (gcd_nonneg(alpha1, s.P1) != 1) throw std::invalid_argument("count_alpha23: gcd(alpha1, eta1 eta3 eta4 eta5 eta6) != 1");
  if (checked_mul(abs128(alpha1), s.D) > B) throw std::invalid_argument("count_alpha23: |x2| exceeds B");
  std::uint64_t n = 0;
  detail::for_each_alpha23(s, alpha1, [&](i64, i64) { ++n; });
  return n;
}

namespace {

// Runs `work(eta, acc)` over all admissible etas with `threads` workers, each
// owning one accumulator. Accumulators are returned in worker order.
template <class Acc, class Work>
std::vector<Acc> parallel_over_etas(const std::vector<Eta>& etas, unsigned threads, const Acc& init, Work work) {
  threads = std::max(1u, threads);
  std::vector<Acc> acc(threads, init);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned id) {
    for (std::size_t i = next.fetch_add(1); i < etas.size(); i = next.fetch_add(1)) work(etas[i], acc[id]);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }
  return acc;
}

}  // namespace

std::uint64_t count_torsor(i64 B, unsigned threads) {
  if (B < 1) throw std::invalid_argument("count_torsor: B must be >= 1");
  if (B > kMaxCountBound) throw std::invalid_argument("count_torsor: B too large");
  const auto etas = admissible_etas(B);
  const auto partial = parallel_over_etas<std::uint64_t>(etas, threads, 0, [B](const Eta& eta, std::uint64_t& acc) {
    const auto s = detail::make_fiber_setup(eta, B);
    std::uint64_t n = 0;
    if (s.P1 == 1) detail::for_each_alpha23(s, 0, [&](i64, i64) { ++n; });
    // The fiber over -alpha1 is the fiber over alpha1.
    std::uint64_t pos = 0;
    for (i64 a1 = 1; a1 <= s.a1_max; ++a1) {
      if (s.P1 != 1 && gcd_nonneg(a1, s.P1) != 1) continue;
      detail::for_each_alpha23(s, a1, [&](i64, i64) { ++pos; });
    }
    acc += n + 2 * pos;
  });
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

std::vector<CountRecord> count_series(const std::vector<i64>& Bs, Method method, unsigned threads) {
  if (Bs.empty()) throw std::invalid_argument("count_series: empty B list");
  for (std::size_t i = 0; i < Bs.size(); ++i) {
    if (Bs[i] < 1) throw std::invalid_argument("count_series: B must be >= 1");
    if (i && Bs[i] <= Bs[i - 1]) throw std::invalid_argument("count_series: B list must be strictly ascending");
  }
  using clock = std::chrono::steady_clock;
  std::vector<CountRecord> out;

  if (method == Method::oracle) {
    for (i64 B : Bs) {
      const auto t0 = clock::now();
      const auto n = oracle_count(B).count;
      const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      out.push_back({B, n, method, ms});
    }
    return out;
  }

  const i64 Bmax = Bs.back();
  if (Bmax > kMaxCountBound) throw std::invalid_argument("count_series: B too large");
  const auto t0 = clock::now();
  const auto etas = admissible_etas(Bmax);
  const std::size_t nb = Bs.size();
  const auto hists = parallel_over_etas<std::vector<std::uint64_t>>(
      etas, threads, std::vector<std::uint64_t>(nb, 0), [&](const Eta& eta, std::vector<std::uint64_t>& hist) {
        const auto s = detail::make_fiber_setup(eta, Bmax);
        auto bucket = [&](i64 h, std::uint64_t weight) {
          const auto it = std::lower_bound(Bs.begin(), Bs.end(), h);
          if (it != Bs.end()) hist[static_cast<std::size_t>(it - Bs.begin())] += weight;
        };
        for (i64 a1 = 0; a1 <= s.a1_max; ++a1) {
          if (gcd_nonneg(a1, s.P1) != 1) continue;
          const std::uint64_t weight = a1 == 0 ? 1 : 2;
          const i64 base = std::max(s.E, s.D * a1);
          detail::for_each_alpha23(s, a1, [&](i64 a2, i64 a3) {
            const i64 h = std::max({base, s.A * (a2 < 0 ? -a2 : a2), s.C * (a3 < 0 ? -a3 : a3),
                                    static_cast<i64>(static_cast<i128>(a2) * a3 < 0 ? -(static_cast<i128>(a2) * a3)
                                                                                    : static_cast<i128>(a2) * a3)});
            bucket(h, weight);
          });
        }
      });
  std::vector<std::uint64_t> hist(nb, 0);
  for (const auto& h : hists)
    for (std::size_t i = 0; i < nb; ++i) hist[i] += h[i];
  const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < nb; ++i) {
    running += hist[i];
    out.push_back({Bs[i], running, method, ms});
  }
  return out;
}

}  // namespace d4count
