#pragma once

#include <optional>
#include <utility>

#include "cleanpair/curve.hpp"

namespace cleanpair {

// y^2 = x^3 - 3t^2 x + 2t^3 + (1-s-3t)^2 s, generic over any ring R.
template <class R>
std::pair<R, R> family_coefficients(const R& s, const R& t) {
  const R l = R(1) - s - R(3) * t;
  return {R(-3) * t * t, R(2) * t * t * t + l * l * s};
}

// The marked point (1-s-2t, 1-s-3t).
template <class R>
std::pair<R, R> family_point(const R& s, const R& t) {
  return {R(1) - s - R(2) * t, R(1) - s - R(3) * t};
}

// -432 s (1-s-3t)^2 (4t^3 + (1-s-3t)^2 s).
template <class R>
R family_discriminant(const R& s, const R& t) {
  const R l = R(1) - s - R(3) * t;
  return R(-432) * s * l * l * (R(4) * t * t * t + l * l * s);
}

enum class MembershipFailure { ZeroDiscriminant, TorsionMarkedPoint };

struct FamilyMember {
  Rational s;
  Rational t;
  CurveQ curve;  // possibly singular when !in_u
  PointQ point;
  bool in_u = false;
  std::optional<MembershipFailure> failure;
  int torsion_order = 0;  // set when failure == TorsionMarkedPoint
};

FamilyMember make_member(const Rational& s, const Rational& t);

// f'(t) = 0 and f(t) / y(P)^2 = s, exactly.
bool verify_member_identity(const FamilyMember& m);

struct PairHypothesis {
  FamilyMember left;
  FamilyMember right;
  Rational shared_s;
  std::pair<bool, bool> rank_one_asserted{false, false};
};

PairHypothesis pair_hypothesis(const FamilyMember& m1, const FamilyMember& m2,
                               std::pair<bool, bool> rank_one = {false, false});

const char* failure_name(MembershipFailure f);

}  // namespace cleanpair
