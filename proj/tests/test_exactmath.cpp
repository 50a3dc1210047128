#include <random>

#include "cleanpair/factor.hpp"
#include "cleanpair/place.hpp"
#include "doctest.h"

using namespace cleanpair;

namespace {

using P = Poly<Rational>;
using RF = RatFunc<Rational>;

P T() { return P::variable(Var::T); }
P c(long v) { return P(Rational(v), Var::T); }

struct Sampler {
  std::mt19937_64 rng{20240611};
  Rational rat(int span = 9) {
    std::uniform_int_distribution<int> n(-span, span), d(1, span);
    return Rational(Integer(n(rng)), Integer(d(rng)));
  }
  P poly(int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::vector<Rational> cs(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : cs) x = rat();
    return P(std::move(cs), Var::T);
  }
  P nonzero_poly(int maxdeg) {
    for (;;) {
      P p = poly(maxdeg);
      if (!p.is_zero()) return p;
    }
  }
  RF ratfunc(int maxdeg) { return RF(poly(maxdeg), nonzero_poly(maxdeg)); }
  RF nonzero_ratfunc(int maxdeg) { return RF(nonzero_poly(maxdeg), nonzero_poly(maxdeg)); }
};

std::vector<Place> places_touching(const RF& f, const RF& g) {
  std::vector<Place> out{Place::infinity(), Place::finite(T()), Place::finite(T() - c(1))};
  for (const RF* h : {&f, &g}) {
    for (const auto& [v, m] : divisor_of(*h)) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("rational canonical form") {
  Rational r(Integer(6), Integer(-4));
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(Integer(0), Integer(-5)).wire() == "0/1");
  CHECK(Rational::parse("-10/4") == Rational(Integer(-5), Integer(2)));
  CHECK(Rational::parse("7").wire() == "7/1");
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DivisionByZero);
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK(exact_root(Rational(Integer(-27), Integer(8)), 3) == Rational(Integer(-3), Integer(2)));
  CHECK_FALSE(is_square(Rational(2)));
}

TEST_CASE("cubic discriminant") {
  const P x = P::variable(Var::X);
  CHECK(poly_discriminant_cubic(x * x * x - P(Rational(1))) == Rational(-27));
  CHECK(poly_discriminant_cubic(x * x * x + x) == Rational(-4));
  CHECK_THROWS_AS(poly_discriminant_cubic(x * x), DegreeError);

  // Quartic (1-s-3T)(4T^3+(1-s-3T)^2 s) over Q(s).
  using K = RatFunc<Rational>;
  using KT = Poly<K>;
  const K s(P::variable(Var::S));
  const KT t = KT::variable(Var::T);
  const KT l = KT(K(1) - s, Var::T) - KT(K(3), Var::T) * t;
  const KT quartic = l * (KT(K(4), Var::T) * t * t * t + l * l * KT(s, Var::T));
  const P sp = P::variable(Var::S);
  const P one(Rational(1), Var::S);
  const K expected(P(Rational(6912), Var::S) * power(sp - one, 9) * sp * sp);
  CHECK(discriminant(quartic) == expected);
}

TEST_CASE("valuation examples") {
  const P t = T();
  const P delta = c(-3888) * power(t, 4) * (c(9) + c(4) * t);
  CHECK(valuation_at(Place::finite(t), RF(delta)) == 4);
  CHECK(valuation_at(Place::finite(t + Rational(Integer(9), Integer(4))), RF(delta)) == 1);
  const P tp = P::variable(Var::Tp);
  const P delta_inf = P(Rational(-3888), Var::Tp) * power(tp, 7) * (P(Rational(4), Var::Tp) + P(Rational(9), Var::Tp) * tp);
  CHECK(valuation_at(Place::finite(tp), RF(delta_inf)) == 7);
  CHECK(valuation_at(Place::infinity(), RF(delta)) == -5);

  const RF f(power(t - c(5), 2), t + c(1));
  CHECK(valuation_at(Place::finite(t - c(5)), f) == 2);
  CHECK(valuation_at(Place::finite(t + c(1)), f) == -1);
  CHECK(valuation_at(Place::infinity(), f) == -1);
  CHECK_THROWS_AS(valuation_at(Place::infinity(), RF()), UndefinedValuation);
  CHECK_THROWS_AS(Place::finite(t * t - c(1)), NotIrreducible);
}

TEST_CASE("quadratic-extension valuation descends") {
  const P t = T();
  // (T^2 - 2) + T*sqrt(2): norm (T^2-2)^2 - 2T^2, valuation 0 at T.
  std::vector<QuadExt> cs{QuadExt(-2), QuadExt(0, 1, 2), QuadExt(1)};
  Poly<QuadExt> f(cs, Var::T);
  CHECK(valuation_at(Place::finite(t), f) == 0);
  // T^2 (1 + sqrt 2) has valuation 2 at T.
  Poly<QuadExt> g(std::vector<QuadExt>{QuadExt(0), QuadExt(0), QuadExt(1, 1, 2)}, Var::T);
  CHECK(valuation_at(Place::finite(t), g) == 2);
  // T - sqrt(2) vanishes at one conjugate point above T^2 - 2 only.
  Poly<QuadExt> h(std::vector<QuadExt>{QuadExt(0, -1, 2), QuadExt(1)}, Var::T);
  CHECK_THROWS_AS(valuation_at(Place::finite(t * t - c(2)), h), DescentError);
  CHECK(valuation_at(Place::infinity(), h) == -1);
}

TEST_CASE("factorization examples") {
  const P t = T();
  const P delta = c(-3888) * power(t, 4) * (c(9) + c(4) * t);
  Factorization f = factor(delta);
  CHECK(f.constant == Rational(-3888 * 4));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == t);
  CHECK(f.factors[0].second == 4);
  CHECK(f.factors[1].first == t + Rational(Integer(9), Integer(4)));
  CHECK(f.factors[1].second == 1);

  Factorization g = factor(t * t - c(1));
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].first == t - c(1));
  CHECK(g.factors[1].first == t + c(1));

  // 4T^3 + (1-s-3T)^2 s. At s = 2 it has the root -1/2: 2(2T+1)(T^2+4T+1).
  const P l2 = c(-1) - c(3) * t;
  const P at2 = c(4) * power(t, 3) + l2 * l2 * c(2);
  const Rational half(Integer(-1), Integer(2));
  CHECK(evaluate(at2, P(half, Var::T)).is_zero());
  CHECK(rational_roots(at2) == std::vector<Rational>{half});
  Factorization f2 = factor(at2);
  REQUIRE(f2.factors.size() == 2);
  CHECK(f2.factors[0].first == t - P(half, Var::T));
  CHECK(f2.factors[1].first == t * t + c(4) * t + c(1));
  // At s = 3 it is irreducible.
  const P l3 = c(-2) - c(3) * t;
  const P cubic = c(4) * power(t, 3) + l3 * l3 * c(3);
  CHECK(rational_roots(cubic).empty());
  CHECK(is_irreducible(cubic));
  CHECK(factor(cubic).factors.size() == 1);

  // Swinnerton-Dyer style: x^4 - 10x^2 + 1 splits mod every prime.
  const P sd = power(t, 4) - c(10) * t * t + c(1);
  CHECK(is_irreducible(sd));
  const P prod = (t * t - c(2)) * (t * t + t + c(1)) * (c(3) * t - c(7)) * power(t * t * t - t - c(1), 2) * sd;
  Factorization h = factor(prod);
  CHECK(expand(h) == prod);
  CHECK(h.factors.size() == 5);
  CHECK(rational_roots(prod) == std::vector<Rational>{Rational(Integer(7), Integer(3))});
}

TEST_CASE("integer helpers") {
  auto f = factor_integer(Integer(-50544));
  std::vector<std::pair<Integer, int>> expected{{2, 4}, {3, 5}, {13, 1}};
  CHECK(f == expected);
  Integer big = Integer("1000000007") * Integer("998244353") * Integer(12);
  auto g = factor_integer(big);
  REQUIRE(g.size() == 4);
  CHECK(g[2].first == Integer("998244353"));
  CHECK(g[3].first == Integer("1000000007"));
  // (x-1)(x-2)(x+3) = x^3 - 7x + 6
  CHECK(integer_roots_depressed_cubic(-7, 6) == std::vector<Integer>{-3, 1, 2});
  CHECK(integer_roots_depressed_cubic(1, 1).empty());
  CHECK(integer_roots_depressed_cubic(0, 1) == std::vector<Integer>{-1});
}

TEST_CASE("quotient field image") {
  const P t = T();
  const Place v = Place::finite(t + Rational(Integer(9), Integer(4)));
  CHECK(quotient_field_image(v, RF(c(-3) * t * t)) == P(Rational(Integer(-243), Integer(16)), Var::T));
  CHECK(quotient_field_image(Place::finite(t), RF(c(2) * power(t, 3) + c(9) * t * t)).is_zero());
  const P l = c(-2) - c(3) * t;
  const Place cubic = Place::finite(c(4) * power(t, 3) + l * l * c(3));
  CHECK(quotient_field_image(cubic, RF(t)) == t);
  CHECK(quotient_field_image(cubic, RF(power(t, 3))).degree() < 3);
  CHECK_THROWS_AS(quotient_field_image(Place::finite(t), RF(c(1), t)), PoleAtPlace);
  // 1/(T+1) mod T^2+1 is (1-T)/2.
  const P inv = quotient_field_image(Place::finite(t * t + c(1)), RF(c(1), t + c(1)));
  CHECK(inv == (c(1) - t).scaled(Rational(Integer(1), Integer(2))));
}

TEST_CASE("ring axioms on samples") {
  Sampler r;
  for (int i = 0; i < 100; ++i) {
    const Rational a = r.rat(), b = r.rat(), d = r.rat();
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    const P p = r.poly(4), q = r.poly(4), s = r.poly(4);
    CHECK((p * q) * s == p * (q * s));
    CHECK(p * (q + s) == p * q + p * s);
    const RF f = r.ratfunc(3), g = r.ratfunc(3), h = r.ratfunc(3);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f + g) - g == f);
  }
}

TEST_CASE("valuation is additive and satisfies the degree formula") {
  Sampler r;
  for (int i = 0; i < 200; ++i) {
    const RF f = r.nonzero_ratfunc(4), g = r.nonzero_ratfunc(4);
    for (const Place& v : places_touching(f, g)) {
      CHECK(valuation_at(v, f * g) == valuation_at(v, f) + valuation_at(v, g));
    }
    int total = 0;
    for (const auto& [v, m] : divisor_of(f)) total += v.degree() * m;
    CHECK(total == 0);
  }
}

TEST_CASE("factorization recombines") {
  Sampler r;
  for (int i = 0; i < 60; ++i) {
    P p = r.nonzero_poly(3) * r.nonzero_poly(3) * r.nonzero_poly(2);
    if (i % 3 == 0) p = p * r.nonzero_poly(2);
    Factorization f = factor(p);
    CHECK(expand(f) == p);
    for (const auto& [g, m] : f.factors) {
      CHECK(g.lead() == Rational(1));
      CHECK(m >= 1);
    }
  }
}

TEST_CASE("conjugation and norm on Q(sqrt 5)") {
  Sampler r;
  for (int i = 0; i < 100; ++i) {
    const QuadExt x(r.rat(), r.rat(), 5), y(r.rat(), r.rat(), 5);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK((x + y).conj() == x.conj() + y.conj());
    CHECK((x * y).norm() == x.norm() * y.norm());
    if (!is_zero(x)) CHECK(x * x.inverse() == QuadExt(1));
  }
  CHECK(QuadExt(1, 2, 4) == QuadExt(5));
  CHECK_THROWS_AS(QuadExt(0, 1, 2) + QuadExt(0, 1, 3), RadicandMismatch);
  CHECK(to_string(QuadExt(1, -1, 2)) == "1 - sqrt(2)");
}

TEST_CASE("variable tags") {
  const P x = P::variable(Var::X);
  CHECK_THROWS_AS(x + T(), VariableMismatch);
  CHECK((x + c(1)).var() == Var::X);
  CHECK(to_string(c(-3) * power(T(), 2) + c(1)) == "-3*T^2 + 1");
}
