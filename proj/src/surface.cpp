#include "d4count/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace d4count {

std::ostream& operator<<(std::ostream& os, const SurfacePoint& p) {
  os << '(' << p.x[0];
  for (int j = 1; j < 5; ++j) os << ',' << p.x[j];
  return os << ')';
}

FormValues evaluate_forms(const Vec5& x) {
  const i128 x0 = x[0], x1 = x[1], x2 = x[2], x3 = x[3], x4 = x[4];
  const i128 q1 = checked_sub(checked_mul(x0, x3), checked_mul(x1, x4));
  const i128 q2 = checked_add(checked_add(checked_mul(x0, x1), checked_mul(x1, x3)), checked_mul(x2, x2));
  return {q1, q2};
}

bool on_surface(const Vec5& x) {
  const auto f = evaluate_forms(x);
  return f.q1 == 0 && f.q2 == 0;
}

SurfacePoint canonicalize(const std::array<i128, 5>& x) {
  i128 g = 0;
  for (i128 c : x) g = gcd_nonneg(g, c);
  if (g == 0) throw std::invalid_argument("canonicalize: zero vector");
  i128 sign = 1;
  for (i128 c : x) {
    if (c != 0) {
      sign = c < 0 ? -1 : 1;
      break;
    }
  }
  SurfacePoint p;
  for (int j = 0; j < 5; ++j) p.x[j] = narrow64(sign * (x[j] / g));
  return p;
}

SurfacePoint canonicalize(const Vec5& x) {
  std::array<i128, 5> wide;
  for (int j = 0; j < 5; ++j) wide[j] = x[j];
  return canonicalize(wide);
}

i64 height(const SurfacePoint& p) {
  i64 h = 0;
  for (i64 c : p.x) h = std::max(h, c < 0 ? -c : c);
  return h;
}

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::on_E5: return "on_E5";
    case PointClass::on_E6: return "on_E6";
    case PointClass::singular_q: return "singular_q";
    case PointClass::interior: return "interior";
  }
  return "?";
}

PointClass classify(const SurfacePoint& p) {
  if (!on_surface(p.x)) throw std::invalid_argument("classify: point is not on the surface");
  const auto& x = p.x;
  if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) return PointClass::singular_q;
  if (x[0] == 0 && x[1] == 0 && x[2] == 0) return PointClass::on_E5;
  if (x[1] == 0 && x[2] == 0 && x[3] == 0) return PointClass::on_E6;
  // On S, x1 = 0 forces x2 = 0 and x0*x3 = 0, i.e. a point of one of the lines.
  return PointClass::interior;
}

bool is_singular_point(const SurfacePoint& p) {
  const i128 x0 = p.x[0], x1 = p.x[1], x2 = p.x[2], x3 = p.x[3], x4 = p.x[4];
  // Gradients of q1 = x0 x3 - x1 x4 and q2 = x0 x1 + x1 x3 + x2^2.
  const std::array<i128, 5> g1{x3, -x4, 0, x0, -x1};
  const std::array<i128, 5> g2{x1, x0 + x3, 2 * x2, x1, 0};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (checked_sub(checked_mul(g1[i], g2[j]), checked_mul(g1[j], g2[i])) != 0) return false;
  return true;
}

SurfacePoint psi_param(i64 t, i64 u, i64 v) {
  if (t == 0 && u == 0 && v == 0) throw std::invalid_argument("psi_param: zero triple");
  const i128 T = t, U = u, V = v;
  const i128 w = checked_add(checked_mul(T, V), checked_mul(U, U));  // tv + u^2
  const std::array<i128, 5> raw{
      checked_mul(T, checked_mul(V, V)), checked_mul(V, checked_mul(V, V)), checked_mul(checked_mul(V, V), U),
      -checked_mul(V, w), -checked_mul(T, w)};
  return canonicalize(raw);
}

PlaneTriple phi_project(const SurfacePoint& p) {
  if (classify(p) != PointClass::interior) throw std::invalid_argument("phi_project: point lies on a line");
  i64 t = p.x[0], u = p.x[2], v = p.x[1];
  if (v < 0) {
    t = -t;
    u = -u;
    v = -v;
  }
  const i64 g = gcd_nonneg(gcd_nonneg(t, u), v);
  return {t / g, u / g, v / g};
}

OracleResult oracle_count(i64 B, bool collect) {
  if (B < 1) throw std::invalid_argument("oracle_count: B must be >= 1");
  OracleResult res;
  // Every interior point has exactly one representative with x1 > 0.
  for (i64 x1 = 1; x1 <= B; ++x1) {
    for (i64 x2 = -B; x2 <= B; ++x2) {
      const i64 sq = x2 * x2;
      if (sq % x1 != 0) continue;
      const i64 c = sq / x1;  // x3 = -(x0 + c)
      // |x3| = |x0 + c| <= B bounds the x0 range.
      const i64 lo = std::max(-B, -B - c), hi = std::min(B, B - c);
      for (i64 x0 = lo; x0 <= hi; ++x0) {
        const i64 x3 = -(x0 + c);
        const i64 prod = x0 * x3;
        if (prod % x1 != 0) continue;
        const i64 x4 = prod / x1;
        if (x4 < -B || x4 > B) continue;
        const i64 g = gcd_nonneg(gcd_nonneg(gcd_nonneg(x0, x1), gcd_nonneg(x2, x3)), x4);
        if (g != 1) continue;
        ++res.count;
        if (collect) res.points.push_back(canonicalize(Vec5{x0, x1, x2, x3, x4}));
      }
    }
  }
  std::sort(res.points.begin(), res.points.end());
  return res;
}

}  // namespace d4count
