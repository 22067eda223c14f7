#pragma once

// Universal torsor of the D4 quartic: integer points (eta1..eta6 > 0, alpha1..alpha3)
// on
//
//   eta2*alpha1^2 + eta3*eta5^2*alpha2 + eta4*eta6^2*alpha3 = 0,
//
// mapping onto S° through the monomials of Psi below. Under the coprimality
// conditions read off the extended Dynkin diagram, Psi is a bijection onto the
// points of bounded height.

#include <array>
#include <string>
#include <vector>

#include "d4count/intkit.hpp"
#include "d4count/surface.hpp"

namespace d4count {

using Eta = std::array<i64, 6>;
using Alpha = std::array<i64, 3>;

struct TorsorPoint {
  Eta eta{1, 1, 1, 1, 1, 1};
  Alpha alpha{0, 0, 0};
  friend auto operator<=>(const TorsorPoint&, const TorsorPoint&) = default;
};

std::ostream& operator<<(std::ostream& os, const TorsorPoint& t);

// ---- Extended Dynkin diagram ----------------------------------------------

enum class Divisor { E1, E2, E3, E4, E5, E6, A1, A2, A3 };

struct DynkinEdge {
  Divisor a;
  Divisor b;
};

inline constexpr std::array<DynkinEdge, 11> kDynkinEdges{{
    {Divisor::A2, Divisor::E5},
    {Divisor::A2, Divisor::A1},
    {Divisor::A2, Divisor::A3},
    {Divisor::E5, Divisor::E3},
    {Divisor::E3, Divisor::E1},
    {Divisor::A1, Divisor::E2},
    {Divisor::E2, Divisor::E1},
    {Divisor::A3, Divisor::E6},
    {Divisor::E6, Divisor::E4},
    {Divisor::E4, Divisor::E1},
    {Divisor::A3, Divisor::A1},
}};

// A1, A2, A3 pass through one common point, so gcd(alpha1, alpha2, alpha3) > 1 is allowed.
inline constexpr bool kAlphaTriplePoint = true;

constexpr bool adjacent(Divisor a, Divisor b) {
  for (const auto& e : kDynkinEdges)
    if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return true;
  return false;
}

/// Whether eta_{i+1} and eta_{j+1} may share a prime (0-based indices).
constexpr bool eta_adjacent(int i, int j) {
  return adjacent(static_cast<Divisor>(i), static_cast<Divisor>(j));
}

/// Coprimality of the eta's alone (pairwise, per the diagram).
bool eta_coprimality_holds(const Eta& eta);

// ---- Torsor equation and projection ---------------------------------------

/// eta2*alpha1^2 + eta3*eta5^2*alpha2 + eta4*eta6^2*alpha3 (any integer 9-tuple).
i128 torsor_form(const Eta& eta, const Alpha& alpha);
inline i128 torsor_form(const TorsorPoint& t) { return torsor_form(t.eta, t.alpha); }

/// The five coordinates of Psi before canonicalization.
std::array<i128, 5> psi_raw(const Eta& eta, const Alpha& alpha);

/// Psi, canonicalized. Throws std::invalid_argument off the torsor hypersurface.
SurfacePoint psi_map(const TorsorPoint& t);

/// |coordinates| of psi_raw.
std::array<i128, 5> height_monomials(const TorsorPoint& t);

struct CoprimalityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

CoprimalityReport check_coprimality(const TorsorPoint& t);

/// Inverse of Psi on S°: the five-step gcd cascade starting from phi(p).
/// Throws std::invalid_argument for points on the lines.
TorsorPoint lift(const SurfacePoint& p);

/// Torsor equation, coprimality, eta_i >= 1 and all height monomials <= B.
bool is_valid(const TorsorPoint& t, i64 B);

// ---- Height conditions in X-variables -------------------------------------

struct XVariables {
  double X0;
  double X1;
  double X2;
};

XVariables x_variables(const Eta& eta, i64 B);

/// |X0^3|, |X0^2 a1/X1|, |X0^2 a2/X2|, |X0 (X0 a2/X2 + (a1/X1)^2)|,
/// |(a2/X2)(X0 a2/X2 + (a1/X1)^2)|. On the torsor these equal the height monomials / B.
std::array<double, 5> x_height_quantities(const TorsorPoint& t, i64 B);

}  // namespace d4count
