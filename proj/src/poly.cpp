#include "cleanpair/poly.hpp"

#include "intpoly.hpp"

namespace cleanpair {

std::string_view var_name(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::T: return "T";
    case Var::Tp: return "T'";
    case Var::Lambda: return "lambda";
    case Var::Tau: return "tau";
    case Var::S: return "s";
    case Var::X1: return "x1";
    case Var::X2: return "x2";
  }
  return "?";
}

// Primitive remainder sequence over Z; avoids the coefficient blow-up of
// Euclid over Q on the high-degree inputs produced by repeated doubling.
Poly<Rational> gcd_rational(const Poly<Rational>& a, const Poly<Rational>& b) {
  const Var v = a.degree() > 0 ? a.var() : b.var();
  if (a.is_zero()) return monic(b).with_var(v);
  if (b.is_zero()) return monic(a).with_var(v);
  if (a.degree() == 0 || b.degree() == 0) return Poly<Rational>(Rational(1), v);
  intpoly::ZPoly x = intpoly::from_rational(a);
  intpoly::ZPoly y = intpoly::from_rational(b);
  if (intpoly::degree(x) < intpoly::degree(y)) std::swap(x, y);
  while (!y.empty()) {
    if (intpoly::degree(y) == 0) return Poly<Rational>(Rational(1), v);
    intpoly::ZPoly r = intpoly::primitive(intpoly::prem(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return monic(intpoly::to_rational(x, v));
}

}  // namespace cleanpair
