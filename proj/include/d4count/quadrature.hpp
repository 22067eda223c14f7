#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace d4count {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // standard |K15 - G7| estimate, not an interval enclosure
  std::uint64_t evaluations = 0;
};

/// Raised when an integral does not reach its tolerance within the evaluation budget.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) with Kronrod and embedded Gauss weights.
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class Scalar>
struct Panel {
  Scalar a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class Scalar, class F>
Panel<Scalar> gauss_kronrod_15(F& f, Scalar a, Scalar b) {
  const Scalar c = (a + b) / 2, h = (b - a) / 2;
  const Scalar fc = f(c);
  Scalar kronrod = fc * static_cast<Scalar>(kKronrodWeights[7]);
  Scalar gauss = fc * static_cast<Scalar>(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = h * static_cast<Scalar>(kKronrodNodes[j]);
    const Scalar sum = f(c - dx) + f(c + dx);
    kronrod += static_cast<Scalar>(kKronrodWeights[j]) * sum;
    if (j % 2 == 1) gauss += static_cast<Scalar>(kGaussWeights[j / 2]) * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: bisects the panel with the
/// largest error until the summed error estimate is <= tol. `breakpoints` are
/// interior points where f is known to be non-smooth.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tol, std::uint64_t max_evals = 4'000'000,
                                    const std::vector<double>& breakpoints = {}) {
  if (!(tol > 0)) throw std::invalid_argument("integrate_adaptive: tol must be positive");
  QuadratureResult res;
  if (a == b) return res;
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);

  std::priority_queue<detail::Panel<double>> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto p = detail::gauss_kronrod_15(f, cuts[i], cuts[i + 1]);
    res.evaluations += 15;
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  // Below ~100 ulp of the running value the K15-G7 estimate is rounding noise.
  auto reached = [&] { return error <= std::max(tol, 100 * std::numeric_limits<double>::epsilon() * std::abs(value)); };
  while (!reached()) {
    if (res.evaluations + 30 > max_evals) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "integrate_adaptive: tolerance %.3g not reached in %llu evaluations, error estimate %.3g",
                    tol, static_cast<unsigned long long>(res.evaluations), error);
      throw QuadratureError(msg);
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = (worst.a + worst.b) / 2;
    if (!(mid > worst.a && mid < worst.b)) throw QuadratureError("integrate_adaptive: panel width underflow");
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    res.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  res.value = value;
  res.error_estimate = error;
  return res;
}

}  // namespace d4count
