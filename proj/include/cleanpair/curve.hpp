#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cleanpair/errors.hpp"
#include "cleanpair/ratfunc.hpp"

namespace cleanpair {

// y^2 = x^3 + a x + b over a field F.
template <class F>
class WeierstrassCurve {
 public:
  // Placeholder y^2 = x^3 for aggregates that are filled in later.
  WeierstrassCurve() = default;
  WeierstrassCurve(F a, F b) : a_(std::move(a)), b_(std::move(b)) {
    if (is_zero(cubic_discriminant())) throw SingularCurve("4a^3 + 27b^2 = 0");
  }
  // Reduction fibers and other cubics that may have a double root.
  static WeierstrassCurve possibly_singular(F a, F b) {
    WeierstrassCurve e;
    e.a_ = std::move(a);
    e.b_ = std::move(b);
    return e;
  }

  const F& a() const { return a_; }
  const F& b() const { return b_; }
  F rhs(const F& x) const { return x * x * x + a_ * x + b_; }
  F cubic_discriminant() const { return F(4) * a_ * a_ * a_ + F(27) * b_ * b_; }
  bool singular() const { return is_zero(cubic_discriminant()); }

  friend bool operator==(const WeierstrassCurve& e, const WeierstrassCurve& o) {
    return e.a_ == o.a_ && e.b_ == o.b_;
  }

 private:
  F a_{};
  F b_{};
};

template <class F>
class CurvePoint {
 public:
  CurvePoint() = default;  // identity
  CurvePoint(F x, F y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
  static CurvePoint identity() { return CurvePoint(); }

  bool is_identity() const { return inf_; }
  const F& x() const { return x_; }
  const F& y() const { return y_; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.inf_ || q.inf_) return p.inf_ == q.inf_;
    return p.x_ == q.x_ && p.y_ == q.y_;
  }

 private:
  bool inf_ = true;
  F x_{};
  F y_{};
};

template <class F>
bool on_curve(const WeierstrassCurve<F>& e, const CurvePoint<F>& p) {
  return p.is_identity() || p.y() * p.y() == e.rhs(p.x());
}

template <class F>
F curve_discriminant(const WeierstrassCurve<F>& e) {
  return F(-16) * e.cubic_discriminant();
}

template <class F>
F j_invariant(const WeierstrassCurve<F>& e) {
  const F four_a3 = F(4) * e.a() * e.a() * e.a();
  return F(1728) * four_a3 / e.cubic_discriminant();
}

template <class F>
CurvePoint<F> negate(const WeierstrassCurve<F>&, const CurvePoint<F>& p) {
  if (p.is_identity()) return p;
  return CurvePoint<F>(p.x(), -p.y());
}

template <class F>
CurvePoint<F> add(const WeierstrassCurve<F>& e, const CurvePoint<F>& p, const CurvePoint<F>& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  F slope;
  if (p.x() == q.x()) {
    if (is_zero(p.y() + q.y())) return CurvePoint<F>::identity();
    slope = (F(3) * p.x() * p.x() + e.a()) / (F(2) * p.y());
  } else {
    slope = (q.y() - p.y()) / (q.x() - p.x());
  }
  F x3 = slope * slope - p.x() - q.x();
  F y3 = slope * (p.x() - x3) - p.y();
  return CurvePoint<F>(std::move(x3), std::move(y3));
}

template <class F>
CurvePoint<F> scalar_mul(const WeierstrassCurve<F>& e, long n, CurvePoint<F> p) {
  if (n < 0) {
    p = negate(e, p);
    n = -n;
  }
  CurvePoint<F> acc;
  while (n > 0) {
    if (n & 1) acc = add(e, acc, p);
    n >>= 1;
    if (n > 0) p = add(e, p, p);
  }
  return acc;
}

template <class F>
std::string to_string(const CurvePoint<F>& p) {
  if (p.is_identity()) return "O";
  return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")";
}

// ---- curves over Q ---------------------------------------------------------

using CurveQ = WeierstrassCurve<Rational>;
using PointQ = CurvePoint<Rational>;

struct TorsionCheck {
  bool torsion = false;
  int order = 0;  // exact order when torsion
};

// Mazur: a rational torsion point has order at most 12.
TorsionCheck is_torsion_overQ(const CurveQ& e, const PointQ& p);

// All rational torsion points (identity first, then by x, y); integer a, b
// required, otherwise ModelError.
std::vector<PointQ> torsion_points_overQ(const CurveQ& e);

// (x, y) -> (d^2 x, d^3 y) from a source curve to a target curve:
// a_target = d^4 a_source, b_target = d^6 b_source.
struct IsomorphismWitness {
  Rational d;

  CurveQ apply(const CurveQ& e) const;
  PointQ apply(const PointQ& p) const;
  IsomorphismWitness then(const IsomorphismWitness& next) const { return {d * next.d}; }
  IsomorphismWitness inverse() const { return {d.inverse()}; }
};

std::optional<IsomorphismWitness> are_isomorphic(const CurveQ& source, const CurveQ& target);

// Smallest positive integer u making u^4 a and u^6 b integral.
struct IntegralModel {
  Integer u;
  CurveQ curve;
  IsomorphismWitness witness;  // d = u
};
IntegralModel integral_model(const CurveQ& e);

struct Normalization {
  Rational s;
  Rational t;  // d^2 * t_in
  IsomorphismWitness witness;
  PointQ point;  // image of the (possibly replaced) input point: (1-s-2t, 1-s-3t)
  bool replaced_by_minus_two = false;
};

// E: y^2 = x^3 - 3t^2 x + b with non-torsion P; returns the family member it
// is isomorphic to.
Normalization normalize_to_family(const CurveQ& e, const Rational& t, const PointQ& p);

}  // namespace cleanpair
