#pragma once

// Integer-coefficient polynomial helpers shared by gcd and factorization.

#include <vector>

#include "cleanpair/poly.hpp"

namespace cleanpair::intpoly {

using ZPoly = std::vector<Integer>;  // lowest degree first, trimmed

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// Positive leading coefficient, content 1.
inline ZPoly primitive(ZPoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g = content(p);
  if (p.back() < 0) g = -g;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

// Primitive integer polynomial proportional to p.
inline ZPoly from_rational(const Poly<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) z.push_back(c.num() * (l / c.den()));
  return primitive(std::move(z));
}

inline Poly<Rational> to_rational(const ZPoly& z, Var v) {
  std::vector<Rational> cs;
  cs.reserve(z.size());
  for (const auto& c : z) cs.emplace_back(c);
  return Poly<Rational>(std::move(cs), v);
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Pseudo-remainder of a by b (deg a >= deg b >= 0).
inline ZPoly prem(ZPoly a, const ZPoly& b) {
  const int db = degree(b);
  const Integer& lb = b.back();
  while (!a.empty() && degree(a) >= db) {
    const Integer la = a.back();
    const int shift = degree(a) - db;
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(j + shift)] -= la * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  return a;
}

// Exact division over Z if b | a; returns false otherwise.
inline bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient) {
  if (b.empty()) return false;
  ZPoly r = a;
  const int db = degree(b);
  if (degree(r) < db) {
    if (!r.empty()) return false;
    if (quotient) quotient->clear();
    return true;
  }
  ZPoly q(static_cast<std::size_t>(degree(r) - db + 1), Integer(0));
  while (!r.empty() && degree(r) >= db) {
    Integer c;
    if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_divexact(c.get_mpz_t(), r.back().get_mpz_t(), b.back().get_mpz_t());
    const int shift = degree(r) - db;
    q[static_cast<std::size_t>(shift)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(j + shift)] -= c * b[static_cast<std::size_t>(j)];
    if (r.back() != 0) return false;
    trim(r);
  }
  if (!r.empty()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

}  // namespace cleanpair::intpoly
