#pragma once

#include <concepts>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "cleanpair/errors.hpp"
#include "cleanpair/quadext.hpp"
#include "cleanpair/rational.hpp"

namespace cleanpair {

// Variable tag carried by every polynomial. Tags only have to agree when
// both operands are non-constant.
enum class Var { X, T, Tp, Lambda, Tau, S, X1, X2 };

std::string_view var_name(Var v);

template <class F>
class Poly;
template <class F>
class RatFunc;

template <class F>
bool is_zero(const Poly<F>& p);
template <class F>
bool is_zero(const RatFunc<F>& f);

// Repeated squaring in any ring with a unit constructible from 1.
template <class R>
R power(R base, unsigned exponent) {
  R acc(1);
  while (exponent > 0) {
    if (exponent & 1U) acc = acc * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return acc;
}

// Dense univariate polynomial, lowest degree first. F may be a field
// (Rational, QuadExt, RatFunc<...>) or a ring (Poly<...>); division-based
// algorithms below require a field.
template <class F>
class Poly {
 public:
  using Coeff = F;
  static constexpr int kZeroDegree = -1;

  Poly() = default;
  explicit Poly(Var v) : var_(v) {}
  template <class S>
    requires(std::constructible_from<F, const S&> &&
             !std::same_as<std::remove_cvref_t<S>, Poly>)
  Poly(const S& constant, Var v = Var::X) : var_(v) {
    F c(constant);
    if (!cleanpair::is_zero(c)) c_.push_back(std::move(c));
  }
  Poly(std::vector<F> coeffs, Var v) : c_(std::move(coeffs)), var_(v) { trim(); }

  static Poly variable(Var v) { return Poly(std::vector<F>{F(0), F(1)}, v); }
  static Poly monomial(const F& c, int k, Var v) {
    std::vector<F> cs(static_cast<std::size_t>(k) + 1, F(0));
    cs.back() = c;
    return Poly(std::move(cs), v);
  }

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  F coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : F(0);
  }
  F lead() const { return c_.empty() ? F(0) : c_.back(); }
  const std::vector<F>& coeffs() const { return c_; }
  Var var() const { return var_; }
  Poly with_var(Var v) const {
    Poly p = *this;
    p.var_ = v;
    return p;
  }

  Poly& operator+=(const Poly& o) {
    var_ = joined_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    var_ = joined_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.joined_var(b));
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (cleanpair::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.c_ == b.c_ && (a.degree() <= 0 || a.var_ == b.var_);
  }

  Poly scaled(const F& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }

 private:
  Var joined_var(const Poly& o) const {
    if (degree() <= 0) return o.degree() <= 0 ? var_ : o.var_;
    if (o.degree() > 0 && o.var_ != var_) {
      throw VariableMismatch(std::string(var_name(var_)) + " vs " + std::string(var_name(o.var_)));
    }
    return var_;
  }
  void trim() {
    while (!c_.empty() && cleanpair::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
  Var var_ = Var::X;
};

template <class F>
bool is_zero(const Poly<F>& p) {
  return p.is_zero();
}

template <class F>
Poly<F> derivative(const Poly<F>& p) {
  std::vector<F> d;
  for (int i = 1; i <= p.degree(); ++i) d.push_back(p.coeff(i) * F(i));
  return Poly<F>(std::move(d), p.var());
}

// Horner evaluation in any ring R that can be built from a coefficient.
template <class F, class R>
R evaluate(const Poly<F>& p, const R& at) {
  R acc(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * at + R(p.coeff(i));
  return acc;
}

template <class F>
F evaluate(const Poly<F>& p, const F& at) {
  return evaluate<F, F>(p, at);
}

// Quotient and remainder over a field.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Var v = (a.degree() > 0) ? a.var() : b.var();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<F>(v), a.with_var(v)};
  std::vector<F> r = a.coeffs();
  std::vector<F> q(static_cast<std::size_t>(a.degree() - db + 1), F(0));
  const F inv = F(1) / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    const F c = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = c;
    if (is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeff(j);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<F>(std::move(q), v), Poly<F>(std::move(r), v)};
}

template <class F>
Poly<F> monic(const Poly<F>& p) {
  if (p.is_zero()) return p;
  return p.scaled(F(1) / p.lead());
}

// Exact quotient; throws if b does not divide a.
template <class F>
Poly<F> divexact(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DivisionByZero("inexact polynomial division");
  return q;
}

Poly<Rational> gcd_rational(const Poly<Rational>& a, const Poly<Rational>& b);

// Monic gcd over a field (zero if both inputs are zero).
template <class F>
Poly<F> gcd(const Poly<F>& a, const Poly<F>& b) {
  if constexpr (std::is_same_v<F, Rational>) {
    return gcd_rational(a, b);
  } else {
    Poly<F> x = a, y = b;
    while (!y.is_zero()) {
      Poly<F> r = divmod(x, y).second;
      x = std::move(y);
      y = monic(r);
    }
    return monic(x);
  }
}

// Bezout: returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
template <class F>
struct ExtendedGcd {
  Poly<F> g, s, t;
};

template <class F>
ExtendedGcd<F> extended_gcd(const Poly<F>& a, const Poly<F>& b) {
  const Var v = a.degree() > 0 ? a.var() : b.var();
  Poly<F> r0 = a, r1 = b, s0(F(1), v), s1(v), t0(v), t1(F(1), v);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<F> s2 = s0 - q * s1;
    Poly<F> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const F inv = F(1) / r0.lead();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

// Resultant over a field via the Euclidean remainder sequence.
template <class F>
F resultant(Poly<F> a, Poly<F> b) {
  if (a.is_zero() || b.is_zero()) return F(0);
  F acc(1);
  while (true) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) return acc * power(b.lead(), static_cast<unsigned>(m));
    Poly<F> r = divmod(a, b).second;
    if (r.is_zero()) return F(0);
    const int k = r.degree();
    if ((m * n) % 2 != 0) acc = -acc;
    acc = acc * power(b.lead(), static_cast<unsigned>(m - k));
    a = std::move(b);
    b = std::move(r);
  }
}

// disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p); disc(x^3+ax+b) = -4a^3-27b^2.
template <class F>
F discriminant(const Poly<F>& p) {
  const int n = p.degree();
  if (n < 1) throw DegreeError("discriminant of a constant");
  F r = resultant(p, derivative(p)) / p.lead();
  if (((n * (n - 1)) / 2) % 2 != 0) r = -r;
  return r;
}

template <class F>
F poly_discriminant_cubic(const Poly<F>& p) {
  if (p.degree() != 3) throw DegreeError("expected degree 3, got " + std::to_string(p.degree()));
  return discriminant(p);
}

// p(1/v) * v^k, valid for k >= deg p.
template <class F>
Poly<F> reciprocal_scaled(const Poly<F>& p, int k, Var v) {
  if (p.degree() > k) throw DegreeError("reciprocal scaling below polynomial degree");
  std::vector<F> cs(static_cast<std::size_t>(k) + 1, F(0));
  for (int i = 0; i <= p.degree(); ++i) cs[static_cast<std::size_t>(k - i)] = p.coeff(i);
  return Poly<F>(std::move(cs), v);
}

namespace detail {

template <class T>
struct is_rational : std::false_type {};
template <>
struct is_rational<Rational> : std::true_type {};

template <class F>
std::string coeff_string(const F& c, bool& negative) {
  if constexpr (is_rational<F>::value) {
    negative = c.sign() < 0;
    return to_string(negative ? -c : c);
  } else {
    negative = false;
    std::string s = to_string(c);
    return s.find_first_of(" +") == std::string::npos ? s : "(" + s + ")";
  }
}

}  // namespace detail

template <class F>
std::string to_string(const Poly<F>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  const std::string_view v = var_name(p.var());
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const F c = p.coeff(i);
    if (is_zero(c)) continue;
    bool neg = false;
    std::string cs = detail::coeff_string(c, neg);
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << cs;
      continue;
    }
    if (cs != "1") out << cs << "*";
    out << v;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

}  // namespace cleanpair
