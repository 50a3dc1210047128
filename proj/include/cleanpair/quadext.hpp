#pragma once

#include <string>

#include "cleanpair/rational.hpp"

namespace cleanpair {

// a + b*sqrt(d) in Q(sqrt d). A square radicand is folded into `a`, so a
// nonzero `b` always means d is a non-square. Elements with b == 0 carry no
// meaningful radicand and combine with any other element.
class QuadExt {
 public:
  QuadExt() = default;
  template <std::integral I>
  QuadExt(I v) : a_(v) {}
  QuadExt(const Rational& a) : a_(a) {}
  QuadExt(const Rational& a, const Rational& b, const Rational& radicand);

  // sqrt(d) itself; rational when d is a square.
  static QuadExt sqrt_of(const Rational& radicand) { return QuadExt(0, 1, radicand); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  // 0 when b == 0 (no radicand bound).
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  QuadExt conj() const;
  Rational norm() const { return a_ * a_ - d_ * b_ * b_; }
  QuadExt inverse() const;

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_); }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
  }

 private:
  Rational joint_radicand(const QuadExt& o) const;

  Rational a_;
  Rational b_;
  Rational d_;
};

inline bool is_zero(const QuadExt& x) { return x.a().is_zero() && x.b().is_zero(); }
std::string to_string(const QuadExt& x);

}  // namespace cleanpair
