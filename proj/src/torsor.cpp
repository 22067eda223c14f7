#include "d4count/torsor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace d4count {

std::ostream& operator<<(std::ostream& os, const TorsorPoint& t) {
  os << "eta=(" << t.eta[0];
  for (int i = 1; i < 6; ++i) os << ',' << t.eta[i];
  os << ") alpha=(" << t.alpha[0] << ',' << t.alpha[1] << ',' << t.alpha[2] << ')';
  return os;
}

bool eta_coprimality_holds(const Eta& eta) {
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (!eta_adjacent(i, j) && gcd_nonneg(eta[i], eta[j]) != 1) return false;
  return true;
}

namespace {

// eta_1^{n1} ... eta_6^{n6}
i128 eta_monomial(const Eta& eta, const std::array<unsigned, 6>& n) {
  i128 r = 1;
  for (int i = 0; i < 6; ++i) r = checked_mul(r, checked_pow(eta[i], n[i]));
  return r;
}

}  // namespace

i128 torsor_form(const Eta& eta, const Alpha& alpha) {
  const i128 a1 = alpha[0];
  const i128 f1 = eta[1];
  const i128 f2 = checked_mul(eta[2], checked_mul(eta[4], eta[4]));
  const i128 f3 = checked_mul(eta[3], checked_mul(eta[5], eta[5]));
  return checked_add(checked_add(checked_mul(f1, checked_mul(a1, a1)), checked_mul(f2, alpha[1])),
                     checked_mul(f3, alpha[2]));
}

std::array<i128, 5> psi_raw(const Eta& eta, const Alpha& alpha) {
  return {
      checked_mul(eta_monomial(eta, {2, 1, 2, 1, 2, 0}), alpha[1]),
      eta_monomial(eta, {4, 2, 3, 3, 2, 2}),
      checked_mul(eta_monomial(eta, {3, 2, 2, 2, 1, 1}), alpha[0]),
      checked_mul(eta_monomial(eta, {2, 1, 1, 2, 0, 2}), alpha[2]),
      checked_mul(static_cast<i128>(alpha[1]), alpha[2]),
  };
}

SurfacePoint psi_map(const TorsorPoint& t) {
  if (torsor_form(t) != 0) throw std::invalid_argument("psi_map: point is not on the torsor");
  return canonicalize(psi_raw(t.eta, t.alpha));
}

std::array<i128, 5> height_monomials(const TorsorPoint& t) {
  auto m = psi_raw(t.eta, t.alpha);
  for (auto& c : m) c = abs128(c);
  return m;
}

CoprimalityReport check_coprimality(const TorsorPoint& t) {
  CoprimalityReport rep;
  const auto& e = t.eta;
  auto fail = [&](std::string what) {
    rep.ok = false;
    rep.violations.push_back(std::move(what));
  };
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (!eta_adjacent(i, j) && gcd_nonneg(e[i], e[j]) != 1) {
        std::ostringstream os;
        os << "eta" << i + 1 << ",eta" << j + 1 << " share a factor";
        fail(os.str());
      }
  const i128 p1 = checked_mul(checked_mul(checked_mul(e[0], e[2]), checked_mul(e[3], e[4])), e[5]);
  const i128 p2 = checked_mul(checked_mul(checked_mul(e[0], e[1]), checked_mul(e[2], e[3])), e[5]);
  const i128 p3 = checked_mul(checked_mul(checked_mul(e[0], e[1]), checked_mul(e[2], e[3])), e[4]);
  if (gcd_nonneg(static_cast<i128>(t.alpha[0]), p1) != 1) fail("gcd(alpha1, eta1 eta3 eta4 eta5 eta6) != 1");
  if (gcd_nonneg(static_cast<i128>(t.alpha[1]), p2) != 1) fail("gcd(alpha2, eta1 eta2 eta3 eta4 eta6) != 1");
  if (gcd_nonneg(static_cast<i128>(t.alpha[2]), p3) != 1) fail("gcd(alpha3, eta1 eta2 eta3 eta4 eta5) != 1");
  return rep;
}

TorsorPoint lift(const SurfacePoint& p) {
  const PlaneTriple tuv = phi_project(p);  // rejects points on the lines

  i128 eta1 = 1, eta2 = 1, eta3 = tuv.v, eta4 = 1, eta5 = 1, eta6 = 1;
  i128 a1 = tuv.u, a2 = tuv.t;
  i128 a3 = -checked_add(checked_mul(eta3, a2), checked_mul(a1, a1));

  // 1. eta2 = gcd(eta3, alpha1); it also divides alpha3.
  eta2 = gcd_nonneg(eta3, a1);
  eta3 /= eta2;
  a1 /= eta2;
  a3 /= eta2;
  // 2. eta1 = gcd(eta2, eta3); it divides alpha3.
  eta1 = gcd_nonneg(eta2, eta3);
  eta2 /= eta1;
  eta3 /= eta1;
  a3 /= eta1;
  // 3. eta4 = gcd(eta1, alpha3).
  eta4 = gcd_nonneg(eta1, a3);
  eta1 /= eta4;
  a3 /= eta4;
  // 4. eta6 = gcd(eta4, alpha3).
  eta6 = gcd_nonneg(eta4, a3);
  eta4 /= eta6;
  a3 /= eta6;
  // 5. eta5 = gcd(eta3, alpha2).
  eta5 = gcd_nonneg(eta3, a2);
  eta3 /= eta5;
  a2 /= eta5;

  TorsorPoint t;
  t.eta = {narrow64(eta1), narrow64(eta2), narrow64(eta3), narrow64(eta4), narrow64(eta5), narrow64(eta6)};
  t.alpha = {narrow64(a1), narrow64(a2), narrow64(a3)};
  return t;
}

bool is_valid(const TorsorPoint& t, i64 B) {
  for (i64 e : t.eta)
    if (e < 1) return false;
  if (torsor_form(t) != 0) return false;
  if (!check_coprimality(t).ok) return false;
  for (i128 m : height_monomials(t))
    if (m > B) return false;
  return true;
}

XVariables x_variables(const Eta& eta, i64 B) {
  double l[6];
  for (int i = 0; i < 6; ++i) l[i] = std::log(static_cast<double>(eta[i]));
  const double lb = std::log(static_cast<double>(B));
  const double l0 = (4 * l[0] + 2 * l[1] + 3 * l[2] + 3 * l[3] + 2 * l[4] + 2 * l[5] - lb) / 3;
  const double l1 = (lb - l[0] - 2 * l[1] + l[4] + l[5]) / 3;
  const double l2 = (lb + 2 * l[0] + l[1] + 3 * l[3] - 2 * l[4] + 4 * l[5]) / 3;
  return {std::exp(l0), std::exp(l1), std::exp(l2)};
}

std::array<double, 5> x_height_quantities(const TorsorPoint& t, i64 B) {
  const auto [X0, X1, X2] = x_variables(t.eta, B);
  const double u = static_cast<double>(t.alpha[0]) / X1;
  const double w = static_cast<double>(t.alpha[1]) / X2;
  const double inner = X0 * w + u * u;
  return {std::abs(X0 * X0 * X0), std::abs(X0 * X0 * u), std::abs(X0 * X0 * w), std::abs(X0 * inner),
          std::abs(w * inner)};
}

}  // namespace d4count
