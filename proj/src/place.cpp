#include "cleanpair/place.hpp"

#include <algorithm>
#include <limits>

#include "cleanpair/factor.hpp"

namespace cleanpair {

namespace {

constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

int raw_valuation(const Place& v, const Poly<Rational>& f) {
  if (f.is_zero()) return kInfiniteValuation;
  if (v.is_infinity()) return -f.degree();
  int k = 0;
  Poly<Rational> g = f;
  while (g.degree() >= v.poly().degree()) {
    auto [q, r] = divmod(g, v.poly());
    if (!r.is_zero()) break;
    g = std::move(q);
    ++k;
  }
  return k;
}

bool coeff_less(const Poly<Rational>& a, const Poly<Rational>& b) {
  for (int i = 0; i <= a.degree(); ++i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

}  // namespace

Place Place::finite(const Poly<Rational>& p) {
  if (p.degree() < 1) throw NotIrreducible("place from a constant polynomial");
  Poly<Rational> m = monic(p);
  if (!is_irreducible(m)) throw NotIrreducible(to_string(m) + " is reducible over Q");
  return finite_trusted(std::move(m));
}

Place Place::finite_trusted(Poly<Rational> p) {
  Place v;
  v.kind_ = Kind::Finite;
  v.poly_ = monic(p);
  return v;
}

std::string Place::label() const { return is_infinity() ? "inf" : to_string(poly_); }

bool operator<(const Place& a, const Place& b) {
  if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
  if (a.poly_.degree() != b.poly_.degree()) return a.poly_.degree() < b.poly_.degree();
  return coeff_less(a.poly_, b.poly_);
}

int valuation_at(const Place& v, const Poly<Rational>& f) {
  if (f.is_zero()) throw UndefinedValuation("valuation of zero");
  return raw_valuation(v, f);
}

int valuation_at(const Place& v, const RatFunc<Rational>& f) {
  if (f.is_zero()) throw UndefinedValuation("valuation of zero");
  return raw_valuation(v, f.num()) - raw_valuation(v, f.den());
}

int valuation_at(const Place& v, const Poly<QuadExt>& f) {
  if (is_zero(f)) throw UndefinedValuation("valuation of zero");
  QuadSplit s = split(f);
  const int va = raw_valuation(v, s.rational);
  if (s.radicand.is_zero()) return va;
  const int k = std::min(va, raw_valuation(v, s.irrational));
  const Poly<Rational> n = s.rational * s.rational - s.irrational * s.irrational * s.radicand;
  if (n.is_zero() || raw_valuation(v, n) != 2 * k) {
    throw DescentError("valuation at " + v.label() + " differs between conjugate points");
  }
  return k;
}

int valuation_at(const Place& v, const RatFunc<QuadExt>& f) {
  if (f.is_zero()) throw UndefinedValuation("valuation of zero");
  return valuation_at(v, f.num()) - valuation_at(v, f.den());
}

Poly<Rational> quotient_field_image(const Place& v, const RatFunc<Rational>& f) {
  if (f.is_zero()) return Poly<Rational>(f.var());
  if (valuation_at(v, f) < 0) throw PoleAtPlace(to_string(f) + " at " + v.label());
  if (v.is_infinity()) {
    if (f.num().degree() < f.den().degree()) return Poly<Rational>(f.var());
    return Poly<Rational>(f.num().lead() / f.den().lead(), f.var());
  }
  const Poly<Rational>& p = v.poly();
  Poly<Rational> n = divmod(f.num(), p).second;
  Poly<Rational> d = divmod(f.den(), p).second;
  ExtendedGcd<Rational> e = extended_gcd(d, p);
  return divmod(n * e.s, p).second;
}

std::vector<std::pair<Place, int>> divisor_of(const RatFunc<Rational>& f) {
  if (f.is_zero()) throw UndefinedValuation("divisor of zero");
  std::vector<std::pair<Place, int>> out;
  auto add = [&](const Poly<Rational>& p, int sign) {
    if (p.degree() < 1) return;
    for (const auto& [g, m] : factor(p).factors) out.emplace_back(Place::finite_trusted(g), sign * m);
  };
  add(f.num(), 1);
  add(f.den(), -1);
  const int at_inf = f.den().degree() - f.num().degree();
  if (at_inf != 0) out.emplace_back(Place::infinity(), at_inf);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

QuadSplit split(const Poly<QuadExt>& f) {
  Rational d;
  std::vector<Rational> a, b;
  for (const auto& c : f.coeffs()) {
    if (!c.is_rational()) {
      if (!d.is_zero() && d != c.radicand()) {
        throw RadicandMismatch("sqrt(" + to_string(d) + ") vs sqrt(" + to_string(c.radicand()) + ")");
      }
      d = c.radicand();
    }
    a.push_back(c.a());
    b.push_back(c.b());
  }
  return {Poly<Rational>(std::move(a), f.var()), Poly<Rational>(std::move(b), f.var()), d};
}

Poly<QuadExt> lift(const Poly<Rational>& f) {
  std::vector<QuadExt> cs;
  for (const auto& c : f.coeffs()) cs.emplace_back(c);
  return Poly<QuadExt>(std::move(cs), f.var());
}

RatFunc<QuadExt> lift(const RatFunc<Rational>& f) { return RatFunc<QuadExt>(lift(f.num()), lift(f.den())); }

}  // namespace cleanpair
