#pragma once

// The quartic del Pezzo surface
//
//   x0*x3 - x1*x4 = 0,   x0*x1 + x1*x3 + x2^2 = 0   in P^4,
//
// with its unique singular point q = (0:0:0:0:1) and the two lines
// E5 = {x0=x1=x2=0}, E6 = {x1=x2=x3=0}. The open part S° is {x1 != 0}.

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

#include "d4count/intkit.hpp"

namespace d4count {

using Vec5 = std::array<i64, 5>;

/// Primitive integer representative with the first nonzero coordinate positive.
struct SurfacePoint {
  Vec5 x{};
  friend auto operator<=>(const SurfacePoint&, const SurfacePoint&) = default;
};

std::ostream& operator<<(std::ostream& os, const SurfacePoint& p);

struct FormValues {
  i128 q1;
  i128 q2;
};

/// Values of the two defining quadrics at x.
FormValues evaluate_forms(const Vec5& x);
bool on_surface(const Vec5& x);

/// Divide by the content and make the first nonzero coordinate positive.
/// Throws std::invalid_argument for the zero vector.
SurfacePoint canonicalize(const Vec5& x);

/// Same, for a raw 128-bit vector (e.g. a torsor image); the primitive result must fit 64 bits.
SurfacePoint canonicalize(const std::array<i128, 5>& x);

/// Anticanonical height: max |x_j| of the primitive representative.
i64 height(const SurfacePoint& p);

enum class PointClass { on_E5, on_E6, singular_q, interior };

const char* to_string(PointClass c);

/// Throws std::invalid_argument when p is not on the surface.
PointClass classify(const SurfacePoint& p);

/// Rank test of the 2x5 Jacobian of (q1, q2).
bool is_singular_point(const SurfacePoint& p);

struct PlaneTriple {
  i64 t;
  i64 u;
  i64 v;
  friend bool operator==(const PlaneTriple&, const PlaneTriple&) = default;
};

/// psi(t:u:v) = (t v^2 : v^3 : v^2 u : -v(tv+u^2) : -t(tv+u^2)), canonicalized.
SurfacePoint psi_param(i64 t, i64 u, i64 v);

/// phi(x) = (x0 : x2 : x1) as a primitive triple with v >= 1. Interior points only.
PlaneTriple phi_project(const SurfacePoint& p);

struct OracleResult {
  std::uint64_t count = 0;
  std::vector<SurfacePoint> points;  // filled only when collected, sorted
};

/// Brute-force count of interior rational points of height <= B.
/// Loops (x1, x2, x0) with divisibility pruning; intended for B up to a few hundred.
OracleResult oracle_count(i64 B, bool collect = false);

}  // namespace d4count
