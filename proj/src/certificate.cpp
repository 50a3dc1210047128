#include "cleanpair/certificate.hpp"

namespace cleanpair {

namespace {

Json ratfunc_to_json(const RatQ& f) { return Json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}}; }

RatQ ratfunc_from_json(const Json& j, Var v) {
  return RatQ(poly_from_json(j.at("num"), v), poly_from_json(j.at("den"), v));
}

Json member_to_json(const FamilyMember& m) {
  Json j;
  j["t"] = rational_to_json(m.t);
  j["curve"] = Json{{"a", rational_to_json(m.curve.a())}, {"b", rational_to_json(m.curve.b())}};
  j["point"] = Json{{"x", rational_to_json(m.point.x())}, {"y", rational_to_json(m.point.y())}};
  j["in_u"] = m.in_u;
  return j;
}

FamilyMember member_from_json(const Json& j, const Rational& s) {
  FamilyMember m{s,
                 rational_from_json(j.at("t")),
                 CurveQ::possibly_singular(rational_from_json(j.at("curve").at("a")),
                                           rational_from_json(j.at("curve").at("b"))),
                 PointQ(rational_from_json(j.at("point").at("x")), rational_from_json(j.at("point").at("y"))),
                 j.at("in_u").get<bool>(),
                 std::nullopt,
                 0};
  return m;
}

Json bipoly_to_json(const BiPoly& F) {
  Json arr = Json::array();
  for (const auto& c : F.coeffs()) arr.push_back(poly_to_json(c));
  return arr;
}

BiPoly bipoly_from_json(const Json& j) {
  if (!j.is_array()) throw CertificateFormatError("fiber polynomial must be an array");
  std::vector<PolyQ> cs;
  for (const auto& c : j) cs.push_back(poly_from_json(c, Var::X2));
  return BiPoly(std::move(cs), Var::X1);
}

Json fiber_to_json(const FiberRecord& rec) {
  Json j;
  j["r"] = rational_to_json(rec.fiber.r);
  j["F"] = bipoly_to_json(rec.fiber.F);
  j["node"] = Json{{"t1", rational_to_json(rec.node.t1)},
                   {"t2", rational_to_json(rec.node.t2)},
                   {"hessian_det", rational_to_json(rec.node.hessian_det)},
                   {"kind", node_kind_name(rec.node.kind)}};
  j["parametrization"] = Json{{"q2", poly_to_json(rec.par.q2)},
                              {"q3", poly_to_json(rec.par.q3)},
                              {"tau", ratfunc_to_json(rec.par.tau)},
                              {"x1", ratfunc_to_json(rec.par.x1)},
                              {"x2", ratfunc_to_json(rec.par.x2)}};
  j["witness"] = Json{{"target", Json{{"x1", rational_to_json(rec.witness.target_x1)},
                                      {"x2", rational_to_json(rec.witness.target_x2)}}},
                      {"lambda_P", rational_to_json(rec.witness.lambda_p)},
                      {"m", rec.witness.m},
                      {"h", ratfunc_to_json(rec.witness.h)}};
  return j;
}

FiberRecord fiber_from_json(const Json& j, const PairHypothesis& pair) {
  FiberRecord rec;
  rec.fiber.r = rational_from_json(j.at("r"));
  rec.fiber.left = pair.left.curve;
  rec.fiber.right = pair.right.curve;
  rec.fiber.F = bipoly_from_json(j.at("F"));
  const Json& n = j.at("node");
  rec.node.t1 = rational_from_json(n.at("t1"));
  rec.node.t2 = rational_from_json(n.at("t2"));
  rec.node.hessian_det = rational_from_json(n.at("hessian_det"));
  const std::string kind = n.at("kind").get<std::string>();
  if (kind == "Node") {
    rec.node.kind = NodeKind::Node;
  } else if (kind == "Cusp") {
    rec.node.kind = NodeKind::Cusp;
  } else {
    throw CertificateFormatError("unknown node kind '" + kind + "'");
  }
  const Json& p = j.at("parametrization");
  rec.par.q2 = poly_from_json(p.at("q2"), Var::Lambda);
  rec.par.q3 = poly_from_json(p.at("q3"), Var::Lambda);
  rec.par.tau = ratfunc_from_json(p.at("tau"), Var::Lambda);
  rec.par.x1 = ratfunc_from_json(p.at("x1"), Var::Lambda);
  rec.par.x2 = ratfunc_from_json(p.at("x2"), Var::Lambda);
  const Json& w = j.at("witness");
  rec.witness.target_x1 = rational_from_json(w.at("target").at("x1"));
  rec.witness.target_x2 = rational_from_json(w.at("target").at("x2"));
  rec.witness.lambda_p = rational_from_json(w.at("lambda_P"));
  rec.witness.m = w.at("m").get<int>();
  rec.witness.h = ratfunc_from_json(w.at("h"), Var::Lambda);
  return rec;
}

}  // namespace

Json rational_to_json(const Rational& r) { return r.wire(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw CertificateFormatError("rational must be a \"num/den\" string");
  const std::string s = j.get<std::string>();
  Rational r;
  try {
    r = Rational::parse(s);
  } catch (const std::exception&) {
    throw CertificateFormatError("bad rational '" + s + "'");
  }
  if (r.wire() != s) throw CertificateFormatError("non-canonical rational '" + s + "'");
  return r;
}

Json poly_to_json(const PolyQ& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(rational_to_json(c));
  return arr;
}

PolyQ poly_from_json(const Json& j, Var v) {
  if (!j.is_array()) throw CertificateFormatError("polynomial must be an array");
  std::vector<Rational> cs;
  for (const auto& c : j) cs.push_back(rational_from_json(c));
  if (!cs.empty() && cs.back().is_zero()) throw CertificateFormatError("polynomial has a zero leading coefficient");
  return PolyQ(std::move(cs), v);
}

Json certificate_to_json(const CleanPairCertificate& cert) {
  Json j;
  j["format"] = kCertificateFormat;
  j["pair"] = Json{{"s", rational_to_json(cert.pair.shared_s)},
                   {"left", member_to_json(cert.pair.left)},
                   {"right", member_to_json(cert.pair.right)},
                   {"rank_one_asserted", Json::array({cert.pair.rank_one_asserted.first,
                                                      cert.pair.rank_one_asserted.second})}};
  j["r"] = rational_to_json(cert.r);
  j["fibers"] = Json::array({fiber_to_json(cert.plus), fiber_to_json(cert.minus)});
  Json pre = Json::array();
  for (const auto& e : cert.preimages) {
    pre.push_back(Json{{"signs", Json::array({e.sign1, e.sign2})},
                       {"ratio", rational_to_json(e.ratio)},
                       {"fiber", e.on_plus ? "+r" : "-r"}});
  }
  j["preimages"] = pre;
  j["conclusion"] = Json{{"multiplier", cert.conclusion.multiplier},
                         {"statement", cert.conclusion.statement},
                         {"conditional", cert.conclusion.conditional},
                         {"clean_asserted", cert.conclusion.clean_asserted},
                         {"n", nullptr},
                         {"n_prime", nullptr}};
  return j;
}

CleanPairCertificate certificate_from_json(const Json& j) {
  CleanPairCertificate c;
  try {
    if (j.at("format").get<std::string>() != kCertificateFormat) {
      throw CertificateFormatError("unsupported format '" + j.at("format").get<std::string>() + "'");
    }
    const Json& p = j.at("pair");
    c.pair.shared_s = rational_from_json(p.at("s"));
    c.pair.left = member_from_json(p.at("left"), c.pair.shared_s);
    c.pair.right = member_from_json(p.at("right"), c.pair.shared_s);
    const Json& flags = p.at("rank_one_asserted");
    c.pair.rank_one_asserted = {flags.at(0).get<bool>(), flags.at(1).get<bool>()};
    c.r = rational_from_json(j.at("r"));
    const Json& fibers = j.at("fibers");
    if (!fibers.is_array() || fibers.size() != 2) throw CertificateFormatError("expected two fibers");
    c.plus = fiber_from_json(fibers.at(0), c.pair);
    c.minus = fiber_from_json(fibers.at(1), c.pair);
    for (const auto& e : j.at("preimages")) {
      PreimageEntry pe;
      pe.sign1 = e.at("signs").at(0).get<int>();
      pe.sign2 = e.at("signs").at(1).get<int>();
      pe.ratio = rational_from_json(e.at("ratio"));
      const std::string f = e.at("fiber").get<std::string>();
      if (f != "+r" && f != "-r") throw CertificateFormatError("fiber tag '" + f + "'");
      pe.on_plus = f == "+r";
      c.preimages.push_back(pe);
    }
    const Json& k = j.at("conclusion");
    c.conclusion.multiplier = k.at("multiplier").get<int>();
    c.conclusion.statement = k.at("statement").get<std::string>();
    c.conclusion.conditional = k.at("conditional").get<std::string>();
    c.conclusion.clean_asserted = k.at("clean_asserted").get<bool>();
    if (!k.at("n").is_null() || !k.at("n_prime").is_null()) throw CertificateFormatError("n, n' slots are unfilled");
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(e.what());
  } catch (const Error& e) {
    if (dynamic_cast<const CertificateFormatError*>(&e)) throw;
    throw CertificateFormatError(e.what());
  }
  // Anything that does not re-encode to the same document is rejected, so a
  // parsed certificate always round-trips bit-exactly.
  if (certificate_to_json(c) != j) throw CertificateFormatError("non-canonical certificate encoding");
  return c;
}

std::string certificate_to_string(const CleanPairCertificate& cert) { return certificate_to_json(cert).dump(2) + "\n"; }

CleanPairCertificate certificate_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(e.what());
  }
  return certificate_from_json(j);
}

}  // namespace cleanpair
