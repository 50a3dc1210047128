#include "cleanpair/kummer.hpp"

#include "cleanpair/certificate.hpp"
#include "cleanpair/factor.hpp"

namespace cleanpair {

namespace {

PolyQ cubic_in(const CurveQ& e, Var v) {
  return PolyQ(std::vector<Rational>{e.b(), e.a(), Rational(0), Rational(1)}, v);
}

// f(x1) - r^2 g(x2) evaluated on any ring R built from rationals.
template <class R>
R fiber_value(const PencilFiber& fb, const R& x1, const R& x2) {
  const R r2(fb.r * fb.r);
  return x1 * x1 * x1 + R(fb.left.a()) * x1 + R(fb.left.b()) -
         r2 * (x2 * x2 * x2 + R(fb.right.a()) * x2 + R(fb.right.b()));
}

struct Expansion {
  PolyQ c0, c1, q2, q3;
};

// F(t1 + lambda*tau, t2 + tau) as a cubic in tau over Q[lambda].
Expansion expand_at(const PencilFiber& fb, const Rational& t1, const Rational& t2) {
  using L = PolyQ;
  using LT = Poly<L>;
  const L lam = L::variable(Var::Lambda);
  const LT x1(std::vector<L>{L(t1, Var::Lambda), lam}, Var::Tau);
  const LT x2(std::vector<L>{L(t2, Var::Lambda), L(Rational(1), Var::Lambda)}, Var::Tau);
  const LT F = fiber_value(fb, x1, x2);
  auto with_lambda = [](L p) { return p.with_var(Var::Lambda); };
  return {with_lambda(F.coeff(0)), with_lambda(F.coeff(1)), with_lambda(F.coeff(2)), with_lambda(F.coeff(3))};
}

bool is_node_param(const NodalParametrization& par, const NodalParametrization& o) {
  return par.q2 == o.q2 && par.q3 == o.q3 && par.tau == o.tau && par.x1 == o.x1 && par.x2 == o.x2;
}

std::string conclusion_statement(int m) {
  return std::to_string(m) + "*Phi(([P1]-[-P1])x([P2]-[-P2])) = 0 in CH^2(E1 x E2)";
}

// The clean-pair conclusion, stated relative to the rank hypotheses still open.
std::string conditional_text(std::pair<bool, bool> asserted) {
  static const std::string tail =
      "E1 x E2 is clean: with n*Q1 in Z*P1 and n'*Q2 in Z*P2 every class in the image is killed by 4*n*n'*m";
  if (asserted.first && asserted.second) return "rank E1(Q) = rank E2(Q) = 1 asserted, so " + tail;
  if (asserted.first) return "rank E1(Q) = 1 asserted; if rank E2(Q) = 1 then " + tail;
  if (asserted.second) return "rank E2(Q) = 1 asserted; if rank E1(Q) = 1 then " + tail;
  return "if rank E1(Q) = rank E2(Q) = 1 then " + tail;
}

void check_fiber_record(const FiberRecord& rec, const Rational& r_expected, const PairHypothesis& pair,
                        std::vector<VerificationReason>& out) {
  const auto& left = pair.left;
  const auto& right = pair.right;
  const std::string tag = r_expected.sign() > 0 ? "+r" : "-r";
  if (rec.fiber.r != r_expected) out.push_back({"RatioMismatch", tag + " fiber carries r = " + to_string(rec.fiber.r)});
  if (!(rec.fiber.left == left.curve) || !(rec.fiber.right == right.curve)) {
    out.push_back({"FiberMismatch", tag + " fiber source curves differ from the pair"});
  }
  const PencilFiber fresh = fiber_at(left.curve, right.curve, r_expected);
  if (!(rec.fiber.F == fresh.F)) out.push_back({"FiberMismatch", tag + " fiber polynomial is not f(x1) - r^2 g(x2)"});

  // Node, from scratch.
  const Rational t1 = left.t, t2 = right.t;
  if (rec.node.t1 != t1 || rec.node.t2 != t2) out.push_back({"NodeMismatch", tag + " node is not (t1, t2)"});
  const Rational r2 = r_expected * r_expected;
  const Rational f_t1 = left.curve.rhs(t1), g_t2 = right.curve.rhs(t2);
  const Rational d1 = Rational(3) * t1 * t1 + left.curve.a();
  const Rational d2 = -r2 * (Rational(3) * t2 * t2 + right.curve.a());
  if (!(f_t1 - r2 * g_t2).is_zero() || !d1.is_zero() || !d2.is_zero()) {
    out.push_back({"NodeMismatch", tag + " fiber is not singular at (t1, t2)"});
  }
  const Rational hess = Rational(6) * t1 * (Rational(-6) * r2 * t2);
  if (rec.node.hessian_det != hess || rec.node.kind != NodeKind::Node || hess.is_zero()) {
    out.push_back({"NodeMismatch", tag + " Hessian determinant/kind"});
  }

  // Parametrization: re-expand, compare, and check the identity.
  const Expansion ex = expand_at(fresh, t1, t2);
  NodalParametrization rebuilt;
  rebuilt.q2 = ex.q2;
  rebuilt.q3 = ex.q3;
  rebuilt.tau = RatQ(-ex.q2, ex.q3);
  const RatQ lam(PolyQ::variable(Var::Lambda));
  rebuilt.x1 = RatQ(PolyQ(t1, Var::Lambda)) + lam * rebuilt.tau;
  rebuilt.x2 = RatQ(PolyQ(t2, Var::Lambda)) + rebuilt.tau;
  if (!ex.c0.is_zero() || !ex.c1.is_zero() || ex.q2.degree() != 2 || ex.q3.degree() != 3 ||
      gcd(ex.q2, ex.q3).degree() != 0) {
    out.push_back({"ParametrizationMismatch", tag + " expansion at the node is not a genuine node"});
  }
  if (!is_node_param(rec.par, rebuilt)) {
    out.push_back({"ParametrizationMismatch", tag + " stored tau/q2/q3/x1/x2 differ from re-derivation"});
  }
  if (!fiber_value(fresh, rec.par.x1, rec.par.x2).is_zero()) {
    out.push_back({"ParametrizationMismatch", tag + " F(x1(lambda), x2(lambda)) != 0"});
  }

  // Divisor of h from factorization, not from the stored fields.
  const DivisorWitness& w = rec.witness;
  const Rational X1 = left.point.x(), X2 = right.point.x();
  if (w.target_x1 != X1 || w.target_x2 != X2) out.push_back({"DivisorMismatch", tag + " target is not (x(P1), x(P2))"});
  bool param_ok = false;
  try {
    param_ok = evaluate(rebuilt.x1, w.lambda_p) == X1 && evaluate(rebuilt.x2, w.lambda_p) == X2;
  } catch (const DivisionByZero&) {
    param_ok = false;
  }
  if (!param_ok) out.push_back({"DivisorMismatch", tag + " lambda_P does not map to the target"});
  const PolyQ lin = PolyQ::variable(Var::Lambda) - PolyQ(w.lambda_p, Var::Lambda);
  const PolyQ qm = monic(ex.q3);
  bool div_ok = true;
  const Factorization fn = factor(w.h.num()), fd = factor(w.h.den());
  if (fn.factors.size() != 1 || !(fn.factors[0].first == lin) || fn.factors[0].second != w.m) div_ok = false;
  if (w.m == 3) {
    if (!(w.h.den() == qm)) div_ok = false;
  } else if (w.m == 1) {
    if (fd.factors.size() != 1 || fd.factors[0].first.degree() != 1 || fd.factors[0].second != 1 ||
        !divmod(ex.q3, fd.factors[0].first).second.is_zero()) {
      div_ok = false;
    }
  } else {
    div_ok = false;
  }
  if (w.h.num().degree() != w.h.den().degree()) div_ok = false;  // no zero/pole at lambda = oo
  if (resultant(w.h.num(), ex.q2).is_zero() || resultant(w.h.den(), ex.q2).is_zero()) div_ok = false;
  if (gcd(w.h.num(), w.h.den()).degree() != 0) div_ok = false;
  if (!div_ok) out.push_back({"DivisorMismatch", tag + " divisor of h is not m[lambda_P] - (infinity branches)"});
}

}  // namespace

const char* node_kind_name(NodeKind k) { return k == NodeKind::Node ? "Node" : "Cusp"; }

PencilFiber fiber_at(const CurveQ& e1, const CurveQ& e2, const Rational& r) {
  const PolyQ g = cubic_in(e2, Var::X2);
  const PolyQ c0 = PolyQ(e1.b(), Var::X2) - g.scaled(r * r);
  BiPoly F(std::vector<PolyQ>{c0, PolyQ(e1.a(), Var::X2), PolyQ(Var::X2), PolyQ(Rational(1), Var::X2)}, Var::X1);
  return {r, e1, e2, F};
}

std::pair<Rational, PencilFiber> build_fiber(const CurveQ& e1, const CurveQ& e2, const PointQ& p1, const PointQ& p2) {
  if (p1.is_identity() || p2.is_identity()) throw TwoTorsionError("identity point has no affine image");
  if (p1.y().is_zero() || p2.y().is_zero()) throw TwoTorsionError("y = 0");
  const Rational r = p1.y() / p2.y();
  PencilFiber fb = fiber_at(e1, e2, r);
  if (!evaluate_fiber(fb, p1.x(), p2.x()).is_zero()) throw NotOnFiber("points are not on their curves");
  return {r, fb};
}

Rational evaluate_fiber(const PencilFiber& fb, const Rational& x1, const Rational& x2) {
  return fiber_value(fb, x1, x2);
}

NodeData find_node(const PencilFiber& fb, const Rational& t1, const Rational& t2) {
  if (!evaluate_fiber(fb, t1, t2).is_zero()) {
    throw NotOnFiber("F(" + to_string(t1) + ", " + to_string(t2) + ") != 0");
  }
  const Rational r2 = fb.r * fb.r;
  const Rational d1 = Rational(3) * t1 * t1 + fb.left.a();
  const Rational d2 = -r2 * (Rational(3) * t2 * t2 + fb.right.a());
  if (!d1.is_zero() || !d2.is_zero()) throw NotSingular("gradient of F is nonzero at the point");
  NodeData n;
  n.t1 = t1;
  n.t2 = t2;
  // Second partials: diag(6 t1, -6 r^2 t2).
  n.hessian_det = Rational(6) * t1 * (Rational(-6) * r2 * t2);
  n.kind = n.hessian_det.is_zero() ? NodeKind::Cusp : NodeKind::Node;
  return n;
}

NodalParametrization parametrize(const PencilFiber& fb, const NodeData& node) {
  if (node.kind == NodeKind::Cusp) throw CuspNotSupported("t1 * t2 = 0");
  const Expansion ex = expand_at(fb, node.t1, node.t2);
  if (!ex.c0.is_zero() || !ex.c1.is_zero()) throw NotSingular("constant/linear terms survive at the node");
  NodalParametrization par;
  par.q2 = ex.q2;
  par.q3 = ex.q3;
  par.tau = RatQ(-ex.q2, ex.q3);
  const RatQ lam(PolyQ::variable(Var::Lambda));
  par.x1 = RatQ(PolyQ(node.t1, Var::Lambda)) + lam * par.tau;
  par.x2 = RatQ(PolyQ(node.t2, Var::Lambda)) + par.tau;
  if (!fiber_value(fb, par.x1, par.x2).is_zero()) throw NotOnFiber("parametrization identity failed");
  return par;
}

DivisorWitness divisor_witness(const NodalParametrization& par, const NodeData& node, const Rational& x1,
                               const Rational& x2) {
  if (x1 == node.t1 && x2 == node.t2) throw NodeIsTarget("target is the node");
  // The line x2 = t2 is lambda = infinity.
  if (x2 == node.t2) throw IrrationalParameter("target lies on the lambda = infinity line");
  DivisorWitness w;
  w.target_x1 = x1;
  w.target_x2 = x2;
  w.lambda_p = (x1 - node.t1) / (x2 - node.t2);
  if (evaluate(par.q3, w.lambda_p).is_zero() || evaluate(par.tau, w.lambda_p) != x2 - node.t2) {
    throw NotOnFiber("target is not on the fiber");
  }
  const PolyQ lin = PolyQ::variable(Var::Lambda) - PolyQ(w.lambda_p, Var::Lambda);
  const std::vector<Rational> roots = rational_roots(par.q3);
  if (!roots.empty()) {
    w.m = 1;
    w.h = RatQ(lin, PolyQ::variable(Var::Lambda) - PolyQ(roots.front(), Var::Lambda));
  } else {
    w.m = 3;
    w.h = RatQ(power(lin, 3), monic(par.q3));
  }
  return w;
}

std::vector<PreimageEntry> preimage_table(const Rational& r, const PointQ& p1, const PointQ& p2) {
  std::vector<PreimageEntry> out;
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      PreimageEntry e;
      e.sign1 = s1;
      e.sign2 = s2;
      e.ratio = (Rational(s1) * p1.y()) / (Rational(s2) * p2.y());
      e.on_plus = e.ratio == r;
      out.push_back(e);
    }
  }
  return out;
}

CleanPairCertificate assemble_certificate(const PairHypothesis& pair) {
  const FamilyMember &a = pair.left, &b = pair.right;
  if (a.point.x() == a.t && b.point.x() == b.t) throw NodeIsTarget("(x(P1), x(P2)) = (t1, t2)");
  CleanPairCertificate c;
  c.pair = pair;
  auto [r, plus] = build_fiber(a.curve, b.curve, a.point, b.point);
  c.r = r;
  for (auto [rec, fb] : {std::pair{&c.plus, plus}, std::pair{&c.minus, fiber_at(a.curve, b.curve, -r)}}) {
    rec->fiber = fb;
    rec->node = find_node(fb, a.t, b.t);
    rec->par = parametrize(fb, rec->node);
    rec->witness = divisor_witness(rec->par, rec->node, a.point.x(), b.point.x());
  }
  c.preimages = preimage_table(r, a.point, b.point);
  c.conclusion.multiplier = c.plus.witness.m;
  c.conclusion.statement = conclusion_statement(c.conclusion.multiplier);
  c.conclusion.conditional = conditional_text(pair.rank_one_asserted);
  c.conclusion.clean_asserted = pair.rank_one_asserted.first && pair.rank_one_asserted.second;
  return c;
}

Verification verify_certificate(const CleanPairCertificate& cert) {
  Verification v;
  auto& out = v.reasons;
  const PairHypothesis& pair = cert.pair;

  std::optional<PairHypothesis> fresh_pair;
  try {
    FamilyMember l = make_member(pair.shared_s, pair.left.t);
    FamilyMember r = make_member(pair.shared_s, pair.right.t);
    for (auto [stored, fresh] : {std::pair{&pair.left, &l}, std::pair{&pair.right, &r}}) {
      if (stored->s != pair.shared_s || !(stored->curve == fresh->curve) || !(stored->point == fresh->point) ||
          stored->in_u != fresh->in_u || !verify_member_identity(*stored)) {
        out.push_back({"MembershipMismatch", "member (" + to_string(stored->s) + ", " + to_string(stored->t) +
                                                 ") does not match a fresh construction"});
      }
    }
    fresh_pair = pair_hypothesis(l, r, pair.rank_one_asserted);
  } catch (const Error& e) {
    out.push_back({"MembershipMismatch", e.what()});
  }
  if (!fresh_pair) {
    v.ok = false;
    return v;
  }

  const Rational y1 = pair.left.point.y(), y2 = pair.right.point.y();
  if (y2.is_zero() || cert.r != y1 / y2) out.push_back({"RatioMismatch", "r != y1(P1)/y2(P2)"});
  const Rational r = cert.r;
  if (r * r * pair.right.curve.rhs(pair.right.t) != pair.left.curve.rhs(pair.left.t)) {
    out.push_back({"RatioMismatch", "r^2 g(t2) != f(t1)"});
  }

  if (!r.is_zero()) {
    try {
      check_fiber_record(cert.plus, r, pair, out);
      check_fiber_record(cert.minus, -r, pair, out);
    } catch (const Error& e) {
      out.push_back({"ParametrizationMismatch", e.what()});
    }
    if (!(cert.plus.fiber.F == cert.minus.fiber.F)) out.push_back({"FiberMismatch", "F(+r) != F(-r)"});
  }

  const std::vector<PreimageEntry> table = preimage_table(r, pair.left.point, pair.right.point);
  bool table_ok = table.size() == cert.preimages.size();
  int plus_count = 0;
  for (std::size_t i = 0; table_ok && i < table.size(); ++i) {
    const auto &a = table[i], &b = cert.preimages[i];
    table_ok = a.sign1 == b.sign1 && a.sign2 == b.sign2 && a.ratio == b.ratio && a.on_plus == b.on_plus;
    plus_count += b.on_plus ? 1 : 0;
  }
  if (!table_ok || plus_count != 2) out.push_back({"PreimageMismatch", "sign table does not split {(P1,P2),(-P1,-P2)} | {(-P1,P2),(P1,-P2)}"});

  const Conclusion& c = cert.conclusion;
  if (c.multiplier != cert.plus.witness.m || c.multiplier != cert.minus.witness.m ||
      c.statement != conclusion_statement(c.multiplier) || c.conditional != conditional_text(pair.rank_one_asserted) ||
      c.clean_asserted != (pair.rank_one_asserted.first && pair.rank_one_asserted.second)) {
    out.push_back({"ConclusionMismatch", "conclusion record does not follow from the witnesses"});
  }

  // Canonical form: the certificate must be exactly what the assembler emits.
  try {
    if (certificate_to_json(cert) != certificate_to_json(assemble_certificate(*fresh_pair))) {
      out.push_back({"CanonicalMismatch", "certificate differs from the canonical rebuild"});
    }
  } catch (const Error& e) {
    out.push_back({"CanonicalMismatch", e.what()});
  }

  v.ok = out.empty();
  return v;
}

}  // namespace cleanpair
