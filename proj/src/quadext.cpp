#include "cleanpair/quadext.hpp"

namespace cleanpair {

QuadExt::QuadExt(const Rational& a, const Rational& b, const Rational& radicand)
    : a_(a), b_(b), d_(radicand) {
  if (b_.is_zero()) {
    d_ = Rational(0);
    return;
  }
  if (d_.is_zero()) throw RadicandMismatch("zero radicand with nonzero irrational part");
  if (auto root = exact_root(d_, 2)) {
    a_ += b_ * *root;
    b_ = Rational(0);
    d_ = Rational(0);
  }
}

Rational QuadExt::joint_radicand(const QuadExt& o) const {
  if (b_.is_zero()) return o.d_;
  if (o.b_.is_zero()) return d_;
  if (d_ != o.d_) {
    throw RadicandMismatch("sqrt(" + to_string(d_) + ") vs sqrt(" + to_string(o.d_) + ")");
  }
  return d_;
}

QuadExt QuadExt::conj() const { return QuadExt(a_, -b_, d_); }

QuadExt QuadExt::inverse() const {
  const Rational n = norm();
  if (n.is_zero()) throw DivisionByZero("inverse of zero in Q(sqrt d)");
  return QuadExt(a_ / n, -b_ / n, d_);
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  const Rational d = joint_radicand(o);
  *this = QuadExt(a_ + o.a_, b_ + o.b_, d);
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  const Rational d = joint_radicand(o);
  *this = QuadExt(a_ - o.a_, b_ - o.b_, d);
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  const Rational d = joint_radicand(o);
  *this = QuadExt(a_ * o.a_ + d * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d);
  return *this;
}

std::string to_string(const QuadExt& x) {
  if (x.is_rational()) return to_string(x.a());
  std::string root = "sqrt(" + to_string(x.radicand()) + ")";
  std::string irr = x.b() == Rational(1)    ? root
                    : x.b() == Rational(-1) ? "-" + root
                                            : to_string(x.b()) + "*" + root;
  if (x.a().is_zero()) return irr;
  if (x.b().sign() < 0) {
    return to_string(x.a()) + " - " + irr.substr(1);
  }
  return to_string(x.a()) + " + " + irr;
}

}  // namespace cleanpair
