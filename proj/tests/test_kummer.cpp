#include <algorithm>
#include <functional>

#include "cleanpair/certificate.hpp"
#include "cleanpair/factor.hpp"
#include "cleanpair/place.hpp"
#include "doctest.h"

using namespace cleanpair;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
PolyQ lam() { return PolyQ::variable(Var::Lambda); }
PolyQ cl(const Rational& c) { return PolyQ(c, Var::Lambda); }

bool has_reason(const Verification& v, const std::string& code) {
  return std::any_of(v.reasons.begin(), v.reasons.end(), [&](const auto& r) { return r.code == code; });
}

CleanPairCertificate example() {
  return assemble_certificate(pair_hypothesis(make_member(q(1), q(1)), make_member(q(1), q(2))));
}

// Every leaf of the document, addressed by JSON pointer.
void leaves(const Json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) leaves(it.value(), path + "/" + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) leaves(j[i], path + "/" + std::to_string(i), out);
    if (j.empty()) out.push_back(path);
  } else {
    out.push_back(path);
  }
}

Json mutate(const Json& leaf) {
  if (leaf.is_boolean()) return !leaf.get<bool>();
  if (leaf.is_number_integer()) return leaf.get<long>() + 1;
  if (leaf.is_null()) return 0;
  if (leaf.is_string()) {
    const std::string s = leaf.get<std::string>();
    try {
      Rational r = Rational::parse(s);
      if (r.wire() == s) return (r + Rational(1)).wire();
    } catch (const std::exception&) {
    }
    return s + "x";
  }
  return Json::array({1});
}

bool rejected(const Json& doc) {
  try {
    return !verify_certificate(certificate_from_json(doc)).ok;
  } catch (const CertificateFormatError&) {
    return true;
  }
}

}  // namespace

TEST_CASE("fiber, node and parametrization for E_{1,1} x E_{1,2}") {
  const FamilyMember a = make_member(q(1), q(1)), b = make_member(q(1), q(2));
  auto [r, fb] = build_fiber(a.curve, b.curve, a.point, b.point);
  CHECK(r == q(1, 2));
  CHECK(build_fiber(a.curve, b.curve, a.point, negate(b.curve, b.point)).first == q(-1, 2));
  CHECK(r * r * b.curve.rhs(q(2)) == a.curve.rhs(q(1)));
  CHECK(r * r * q(36) == q(9));
  CHECK_THROWS_AS(build_fiber(a.curve, b.curve, a.point, PointQ(q(0), q(0))), TwoTorsionError);

  NodeData n = find_node(fb, q(1), q(2));
  CHECK(n.kind == NodeKind::Node);
  CHECK(n.hessian_det == q(-18));
  CHECK_THROWS_AS(find_node(fb, q(1), q(3)), NotOnFiber);

  // By hand: f1(1+u) = 9 + 3u^2 + u^3, f2(2+v) = 36 + 6v^2 + v^3.
  NodalParametrization par = parametrize(fb, n);
  CHECK(par.q2 == cl(q(3)) * lam() * lam() - cl(q(3, 2)));
  CHECK(par.q3 == power(lam(), 3) - cl(q(1, 4)));
  CHECK(par.tau == RatQ(-(cl(q(3)) * lam() * lam() - cl(q(3, 2))), power(lam(), 3) - cl(q(1, 4))));
  CHECK(rational_roots(par.q2).empty());
  CHECK(evaluate_fiber(fb, q(-2), q(2)).is_zero());  // lambda = oo lands at (-2, 2)

  DivisorWitness w = divisor_witness(par, n, q(-2), q(-4));
  CHECK(w.lambda_p == q(1, 2));
  CHECK(w.m == 3);
  CHECK(w.h == RatQ(power(lam() - cl(q(1, 2)), 3), power(lam(), 3) - cl(q(1, 4))));
  CHECK(evaluate(par.tau, q(1, 2)) == q(-6));
  CHECK(w.h.num().degree() == w.h.den().degree());
  CHECK_THROWS_AS(divisor_witness(par, n, q(1), q(2)), NodeIsTarget);

  // h at the node branches lambda = +-1/sqrt(2): finite and nonzero.
  const QuadExt branch(0, q(1, 2), 2);
  REQUIRE(is_zero(evaluate(lift(par.q2), branch)));
  CHECK_FALSE(is_zero(evaluate(lift(w.h.num()), branch)));
  CHECK_FALSE(is_zero(evaluate(lift(w.h.den()), branch)));
}

TEST_CASE("cusp and rational infinity branch") {
  // y^2 = x^3 + 1 has f'(0) = 0, so the singularity at (0, 1) is a cusp.
  const CurveQ e1(q(0), q(1));
  const CurveQ g2(q(-3), q(11));
  const PencilFiber fb = fiber_at(e1, g2, q(1, 3));
  NodeData n = find_node(fb, q(0), q(1));
  CHECK(n.kind == NodeKind::Cusp);
  CHECK_THROWS_AS(parametrize(fb, n), CuspNotSupported);

  // r = 8 is a cube, so q3 = lambda^3 - 64 has the rational root 4 and m = 1.
  // f(1) = 1 - 3 + b1 must equal r^2 g(1) = 64 * 9.
  const CurveQ f1(q(-3), q(64 * 9 + 2));
  const PencilFiber fc = fiber_at(f1, g2, q(8));
  NodeData nc = find_node(fc, q(1), q(1));
  NodalParametrization pc = parametrize(fc, nc);
  CHECK(rational_roots(pc.q3) == std::vector<Rational>{q(4)});
  // A point on this fiber off the node: lambda = 1 gives tau = -q2(1)/q3(1).
  const Rational tau1 = evaluate(pc.tau, q(1));
  DivisorWitness wc = divisor_witness(pc, nc, q(1) + tau1, q(1) + tau1);
  CHECK(wc.m == 1);
  CHECK(wc.lambda_p == q(1));
  CHECK(wc.h == RatQ(lam() - cl(q(1)), lam() - cl(q(4))));
}

TEST_CASE("certificate for (1,1), (1,2)") {
  CleanPairCertificate c = example();
  CHECK(c.r == q(1, 2));
  CHECK(c.plus.node.t1 == q(1));
  CHECK(c.plus.node.t2 == q(2));
  CHECK(c.plus.witness.lambda_p == q(1, 2));
  CHECK(c.conclusion.multiplier == 3);
  CHECK(c.minus.fiber.r == q(-1, 2));
  CHECK(c.plus.fiber.F == c.minus.fiber.F);

  int plus = 0;
  for (const auto& e : c.preimages) {
    CHECK(e.on_plus == (e.sign1 == e.sign2));
    plus += e.on_plus;
  }
  CHECK(plus == 2);
  CHECK(c.preimages.size() == 4);

  Verification v = verify_certificate(c);
  for (const auto& r : v.reasons) MESSAGE(r.code << ": " << r.detail);
  CHECK(v.ok);

  CHECK_THROWS_AS(assemble_certificate(pair_hypothesis(make_member(q(1), q(1)), make_member(q(1), q(1)))),
                  DegeneratePair);
}

TEST_CASE("certificate wire format round-trips bit-exactly") {
  const std::string text = certificate_to_string(example());
  const CleanPairCertificate back = certificate_from_string(text);
  CHECK(certificate_to_string(back) == text);
  CHECK(verify_certificate(back).ok);
  const Json j = Json::parse(text);
  CHECK(j["r"] == "1/2");
  CHECK(j["fibers"][0]["parametrization"]["q3"] == Json::array({"-1/4", "0/1", "0/1", "1/1"}));
  CHECK_THROWS_AS(certificate_from_string("{"), CertificateFormatError);
  Json bad = j;
  bad["r"] = "2/4";
  CHECK_THROWS_AS(certificate_from_json(bad), CertificateFormatError);
}

TEST_CASE("targeted tampering is reported with the right reason") {
  CleanPairCertificate c = example();
  CleanPairCertificate a = c;
  a.plus.witness.lambda_p = q(1, 3);
  Verification va = verify_certificate(a);
  CHECK_FALSE(va.ok);
  CHECK(has_reason(va, "DivisorMismatch"));

  CleanPairCertificate b = c;
  b.r = q(1, 3);
  Verification vb = verify_certificate(b);
  CHECK_FALSE(vb.ok);
  CHECK(has_reason(vb, "RatioMismatch"));

  CleanPairCertificate d = c;
  d.plus.par.tau = RatQ(lam());
  CHECK(has_reason(verify_certificate(d), "ParametrizationMismatch"));

  CleanPairCertificate e = c;
  std::swap(e.preimages[0].on_plus, e.preimages[1].on_plus);
  CHECK(has_reason(verify_certificate(e), "PreimageMismatch"));
}

TEST_CASE("every single-field mutation is rejected") {
  const Json doc = certificate_to_json(example());
  std::vector<std::string> paths;
  leaves(doc, "", paths);
  CHECK(paths.size() > 50);
  int caught = 0;
  for (const auto& p : paths) {
    Json m = doc;
    const Json::json_pointer ptr(p);
    m[ptr] = mutate(doc[ptr]);
    const bool r = rejected(m);
    if (!r) MESSAGE("mutation not caught at " << p);
    CHECK(r);
    caught += r;
  }
  CHECK(caught == static_cast<int>(paths.size()));
}
