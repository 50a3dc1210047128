#include "cleanpair/family.hpp"

namespace cleanpair {

FamilyMember make_member(const Rational& s, const Rational& t) {
  auto [a, b] = family_coefficients(s, t);
  auto [px, py] = family_point(s, t);
  FamilyMember m{s, t, CurveQ::possibly_singular(a, b), PointQ(px, py), false, std::nullopt, 0};
  if (m.curve.singular()) {
    m.failure = MembershipFailure::ZeroDiscriminant;
    return m;
  }
  TorsionCheck tc = is_torsion_overQ(m.curve, m.point);
  if (tc.torsion) {
    m.failure = MembershipFailure::TorsionMarkedPoint;
    m.torsion_order = tc.order;
    return m;
  }
  m.in_u = true;
  return m;
}

bool verify_member_identity(const FamilyMember& m) {
  if (!on_curve(m.curve, m.point) || m.point.is_identity() || m.point.y().is_zero()) return false;
  const Rational df = Rational(3) * m.t * m.t + m.curve.a();
  return df.is_zero() && m.curve.rhs(m.t) / (m.point.y() * m.point.y()) == m.s;
}

PairHypothesis pair_hypothesis(const FamilyMember& m1, const FamilyMember& m2, std::pair<bool, bool> rank_one) {
  if (m1.s != m2.s) throw SMismatch("s = " + to_string(m1.s) + " vs s = " + to_string(m2.s));
  for (const FamilyMember* m : {&m1, &m2}) {
    if (!m->in_u) {
      throw NotInU("(" + to_string(m->s) + ", " + to_string(m->t) + "): " + failure_name(*m->failure));
    }
  }
  if (m1.t == m2.t) throw DegeneratePair("t1 = t2 = " + to_string(m1.t));
  if (!verify_member_identity(m1) || !verify_member_identity(m2)) {
    throw ModelError("family identity f(t)/y(P)^2 = s failed");
  }
  return {m1, m2, m1.s, rank_one};
}

const char* failure_name(MembershipFailure f) {
  switch (f) {
    case MembershipFailure::ZeroDiscriminant: return "ZeroDiscriminant";
    case MembershipFailure::TorsionMarkedPoint: return "TorsionMarkedPoint";
  }
  return "?";
}

}  // namespace cleanpair
