#pragma once

#include <utility>
#include <vector>

#include "cleanpair/poly.hpp"

namespace cleanpair {

// p = constant * prod factor^multiplicity, factors monic irreducible over Q,
// ordered by degree and then coefficients.
struct Factorization {
  Rational constant;
  std::vector<std::pair<Poly<Rational>, int>> factors;
};

// Complete factorization over Q: squarefree decomposition followed by
// Zassenhaus (factor mod p, Hensel lift, recombine). Zero input throws.
Factorization factor(const Poly<Rational>& p);

Poly<Rational> expand(const Factorization& f);
bool is_irreducible(const Poly<Rational>& p);
std::vector<Rational> rational_roots(const Poly<Rational>& p);

// Prime factorization of |n| (n != 0), ascending primes.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

// Integer roots of x^3 + a x + c, exact (monotone-segment bisection).
std::vector<Integer> integer_roots_depressed_cubic(const Integer& a, const Integer& c);

}  // namespace cleanpair
