#pragma once

#include <string>

#include "cleanpair/poly.hpp"

namespace cleanpair {

// num/den over a field F; always reduced with a monic denominator.
template <class F>
class RatFunc {
 public:
  RatFunc() : num_(), den_(F(1)) {}
  template <class S>
    requires(std::constructible_from<Poly<F>, const S&> &&
             !std::same_as<std::remove_cvref_t<S>, RatFunc>)
  RatFunc(const S& p) : num_(p), den_(F(1), num_.var()) {}
  RatFunc(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }
  Var var() const { return num_.degree() > 0 ? num_.var() : den_.var(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // Degree as a map P^1 -> P^1: max(deg num, deg den).
  int height_degree() const { return std::max(num_.degree(), den_.degree()); }

  RatFunc inverse() const {
    if (num_.is_zero()) throw DivisionByZero("inverse of zero rational function");
    return RatFunc(den_, num_);
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_polynomial() && b.is_polynomial()) {
      RatFunc r;
      r.num_ = a.num_ * b.num_ * (a.den_.lead() * b.den_.lead());
      r.den_ = Poly<F>(F(1), r.num_.var());
      return r;
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
      num_ = Poly<F>(den_.var());
      den_ = Poly<F>(F(1), den_.var());
      return;
    }
    if (den_.degree() > 0) {
      Poly<F> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divexact(num_, g);
        den_ = divexact(den_, g);
      }
    }
    const F inv = F(1) / den_.lead();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }

  Poly<F> num_;
  Poly<F> den_;
};

template <class F>
bool is_zero(const RatFunc<F>& f) {
  return f.is_zero();
}

template <class F>
std::string to_string(const RatFunc<F>& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

// Value at a point of the coefficient field (or any ring built from F).
template <class F, class R>
R evaluate(const RatFunc<F>& f, const R& at) {
  R d = evaluate(f.den(), at);
  if (is_zero(d)) throw DivisionByZero("rational function evaluated at a pole");
  return evaluate(f.num(), at) / d;
}

template <class F>
F evaluate(const RatFunc<F>& f, const F& at) {
  return evaluate<F, F>(f, at);
}

// f(1/v), re-expressed in the variable v.
template <class F>
RatFunc<F> substitute_reciprocal(const RatFunc<F>& f, Var v) {
  const int n = std::max(f.num().degree(), 0);
  const int d = std::max(f.den().degree(), 0);
  Poly<F> num = reciprocal_scaled(f.num().with_var(v), n, v);
  Poly<F> den = reciprocal_scaled(f.den().with_var(v), d, v);
  if (d >= n) {
    num = num * Poly<F>::monomial(F(1), d - n, v);
  } else {
    den = den * Poly<F>::monomial(F(1), n - d, v);
  }
  return RatFunc<F>(num, den);
}

template <class F>
RatFunc<F> derivative(const RatFunc<F>& f) {
  return RatFunc<F>(derivative(f.num()) * f.den() - f.num() * derivative(f.den()), f.den() * f.den());
}

}  // namespace cleanpair
