#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cleanpair/ratfunc.hpp"

namespace cleanpair {

// A place of Q(T): a monic irreducible polynomial, or infinity. degree()
// counts the geometric points of P^1 lying under it.
class Place {
 public:
  enum class Kind { Finite, Infinity };

  // Normalizes to monic and checks irreducibility over Q.
  static Place finite(const Poly<Rational>& p);
  // For polynomials already known to be monic irreducible (factor() output).
  static Place finite_trusted(Poly<Rational> p);
  static Place infinity() { return Place(); }

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  const Poly<Rational>& poly() const { return poly_; }
  int degree() const { return is_infinity() ? 1 : poly_.degree(); }
  std::string label() const;

  friend bool operator==(const Place& a, const Place& b) {
    return a.kind_ == b.kind_ && (a.is_infinity() || a.poly_ == b.poly_);
  }
  friend bool operator<(const Place& a, const Place& b);

 private:
  Place() = default;
  Kind kind_ = Kind::Infinity;
  Poly<Rational> poly_;
};

int valuation_at(const Place& v, const Poly<Rational>& f);
int valuation_at(const Place& v, const RatFunc<Rational>& f);
// Coefficients in Q(sqrt d): the valuation is computed at the Q-place and
// certified to be the same at every geometric point above it via the norm;
// throws DescentError otherwise.
int valuation_at(const Place& v, const Poly<QuadExt>& f);
int valuation_at(const Place& v, const RatFunc<QuadExt>& f);

// Image of f in Q[T]/(p), as a polynomial of degree < deg p.
Poly<Rational> quotient_field_image(const Place& v, const RatFunc<Rational>& f);

// Every place where f has nonzero valuation, in place order.
std::vector<std::pair<Place, int>> divisor_of(const RatFunc<Rational>& f);

// Split a + b*sqrt(d) coefficientwise; d is the common radicand (0 if none).
struct QuadSplit {
  Poly<Rational> rational;
  Poly<Rational> irrational;
  Rational radicand;
};
QuadSplit split(const Poly<QuadExt>& f);
Poly<QuadExt> lift(const Poly<Rational>& f);
RatFunc<QuadExt> lift(const RatFunc<Rational>& f);

}  // namespace cleanpair
