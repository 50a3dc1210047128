#include "cleanpair/ffheights.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "cleanpair/certificate.hpp"
#include "cleanpair/factor.hpp"

namespace cleanpair {

namespace {

constexpr int kInfiniteVal = 1 << 20;

PolyT tvar() { return PolyT::variable(Var::T); }
PolyT tc(const Rational& c) { return PolyT(c, Var::T); }

Place tprime_zero() { return Place::finite_trusted(PolyT::variable(Var::Tp)); }

int val(const Place& v, const QRatT& f) { return f.is_zero() ? kInfiniteVal : valuation_at(v, f); }
int val(const Place& v, const PolyT& f) { return f.is_zero() ? kInfiniteVal : valuation_at(v, f); }

PolyT poly_lcm(const PolyT& a, const PolyT& b) { return divmod(a * b, gcd(a, b)).first; }

PolyT delta_of(const PolyT& a, const PolyT& b) {
  return PolyT(Rational(-16), a.var()) * (PolyT(Rational(4), a.var()) * a * a * a + PolyT(Rational(27), a.var()) * b * b);
}

int ceil_div(int n, int d) { return n <= 0 ? 0 : (n + d - 1) / d; }

QRatT qlift(const PolyT& p) { return lift(RatT(p)); }

QRatT conj(const QRatT& f) {
  auto c = [](const Poly<QuadExt>& p) {
    std::vector<QuadExt> cs;
    for (const auto& x : p.coeffs()) cs.push_back(x.conj());
    return Poly<QuadExt>(std::move(cs), p.var());
  };
  return QRatT(c(f.num()), c(f.den()));
}

// Image of a place-local model: coefficients, discriminant and the place
// itself (T' = 0 for infinity).
struct LocalModel {
  PolyT a;
  PolyT b;
  PolyT delta;
  Place place = Place::infinity();
};

LocalModel local_model(const FunctionFieldCurve& e, const Place& v) {
  if (v.is_infinity()) return {e.a_inf(), e.b_inf(), e.discriminant_at_infinity(), tprime_zero()};
  return {e.a(), e.b(), e.discriminant(), v};
}

std::string minus_term(const std::string& x, const Rational& u) {
  if (u.is_zero()) return x;
  return "(" + x + (u.sign() > 0 ? " - " : " + ") + to_string(u.abs()) + ")";
}

std::string reduced_equation(const LocalModel& m, bool infinity) {
  const std::string y = infinity ? "y'" : "y";
  const std::string x = infinity ? "x'" : "x";
  const Place& p = m.place;
  if (p.degree() == 1) {
    const Rational t0 = -p.poly().coeff(0);
    const Rational a0 = evaluate(m.a, t0), b0 = evaluate(m.b, t0);
    if (a0.is_zero()) return y + "^2=" + x + "^3";
    const Rational u = Rational(-3) * b0 / (Rational(2) * a0);
    return y + "^2=" + minus_term(x, u) + "^2" + minus_term(x, Rational(-2) * u);
  }
  const PolyT a0 = quotient_field_image(p, RatT(m.a));
  if (a0.is_zero()) return y + "^2=" + x + "^3";
  const PolyT u = quotient_field_image(p, RatT(PolyT(Rational(-3), m.b.var()) * m.b, PolyT(Rational(2), m.a.var()) * m.a));
  return y + "^2=(" + x + " - u)^2(" + x + " + 2u), u = " + to_string(u) + " mod " + to_string(p.poly());
}

ReductionProfile profile_at(const FunctionFieldCurve& e, const Place& v) {
  const LocalModel m = local_model(e, v);
  ReductionProfile r;
  r.place = v;
  r.val_delta = val(m.place, m.delta);
  r.geometric_multiplicity = v.degree();
  if (r.val_delta == 0) return r;
  const int va = val(m.place, m.a);  // val(c4), c4 = -48a
  if (r.val_delta >= 12 && va >= 4) {
    throw MinimalityError("model is not minimal at " + v.label() + ": val(Delta) = " + std::to_string(r.val_delta) +
                          ", val(c4) = " + std::to_string(va));
  }
  r.type = va == 0 ? ReductionType::Multiplicative : ReductionType::Additive;
  r.components = r.type == ReductionType::Multiplicative ? r.val_delta : r.val_delta - 1;
  r.reduction = reduced_equation(m, v.is_infinity());
  return r;
}

// Finite places where x has a pole (norm of the denominator over Q).
std::vector<Place> pole_places(const QRatT& x) {
  const QuadSplit d = split(x.den());
  PolyT norm = d.rational * d.rational - PolyT(d.radicand, d.rational.var()) * d.irrational * d.irrational;
  std::vector<Place> out;
  if (norm.degree() <= 0) return out;
  for (const auto& [f, m] : factor(norm.with_var(Var::T)).factors) {
    const Place p = Place::finite_trusted(f);
    if (val(p, x) < 0) out.push_back(p);
  }
  return out;
}

// constant * prod g^m with each g a primitive integer polynomial.
std::string factored(const PolyT& p) {
  const Factorization f = factor(p);
  Rational constant = f.constant;
  std::string body;
  for (const auto& [g, m] : f.factors) {
    Integer scale = 1;
    for (const auto& c : g.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.den().get_mpz_t());
    const PolyT h = g * PolyT(Rational(scale), g.var());
    constant /= pow(Rational(scale), m);
    body += h.degree() == 1 && h.coeff(0).is_zero() ? " " + to_string(h) : " (" + to_string(h) + ")";
    if (m > 1) body += "^" + std::to_string(m);
  }
  return to_string(constant) + body;
}

std::string column_label(const Place& v) {
  if (v.is_infinity()) return "inf";
  if (v.degree() == 1) return to_string(-v.poly().coeff(0));
  return "roots of " + to_string(v.poly());
}

}  // namespace

FunctionFieldCurve::FunctionFieldCurve(const RatT& a, const RatT& b) {
  const PolyT da = a.den().with_var(Var::T), db = b.den().with_var(Var::T);
  const PolyT d = poly_lcm(da, db);
  scale_ = RatT(d);
  a_ = (a * RatT(power(d, 4))).num().with_var(Var::T);
  b_ = (b * RatT(power(d, 6))).num().with_var(Var::T);
  if ((PolyT(Rational(4), Var::T) * a_ * a_ * a_ + PolyT(Rational(27), Var::T) * b_ * b_).is_zero()) {
    throw SingularCurve("4a^3 + 27b^2 = 0 in Q(T)");
  }
  k_ = std::max(ceil_div(a_.degree(), 4), ceil_div(b_.degree(), 6));
  a_inf_ = reciprocal_scaled(a_, 4 * k_, Var::Tp);
  b_inf_ = reciprocal_scaled(b_, 6 * k_, Var::Tp);
  group_ = WeierstrassCurve<QRatT>(qlift(a_), qlift(b_));
}

PolyT FunctionFieldCurve::discriminant() const { return delta_of(a_, b_); }
PolyT FunctionFieldCurve::discriminant_at_infinity() const { return delta_of(a_inf_, b_inf_); }

FFPoint FunctionFieldCurve::import_point(const FFPoint& p) const {
  if (p.is_identity()) return p;
  const QRatT d = lift(scale_);
  const FFPoint q(p.x() * d * d, p.y() * d * d * d);
  if (!on_curve(group_, q)) throw NotOnCurve(to_string(p));
  return q;
}

FFPoint FunctionFieldCurve::at_infinity(const FFPoint& p) const {
  if (p.is_identity()) return p;
  const QRatT tp = lift(RatT(PolyT::variable(Var::Tp)));
  return FFPoint(substitute_reciprocal(p.x(), Var::Tp) * power(tp, 2 * k_),
                 substitute_reciprocal(p.y(), Var::Tp) * power(tp, 3 * k_));
}

std::vector<ReductionProfile> bad_places(const FunctionFieldCurve& e) {
  std::vector<ReductionProfile> out;
  for (const auto& [f, m] : factor(e.discriminant()).factors) {
    (void)m;
    out.push_back(profile_at(e, Place::finite_trusted(f)));
  }
  ReductionProfile inf = profile_at(e, Place::infinity());
  if (inf.val_delta > 0) out.push_back(inf);
  return out;
}

int shioda_tate_rank(const std::vector<ReductionProfile>& profiles) {
  int sum = 0, bad = 0, additive = 0;
  for (const auto& p : profiles) {
    if (p.type == ReductionType::Good) continue;
    sum += p.geometric_multiplicity * p.val_delta;
    bad += p.geometric_multiplicity;
    if (p.type == ReductionType::Additive) additive += p.geometric_multiplicity;
  }
  if (sum != 12) throw NotRationalSurface("sum of val(Delta) is " + std::to_string(sum) + ", expected 12");
  return 8 - sum + bad + additive;
}

PlaceHeight local_height_record(const FunctionFieldCurve& e, const FFPoint& p, const Place& v) {
  if (p.is_identity()) throw IdentityHeight("local height of O is undefined");
  const LocalModel m = local_model(e, v);
  const FFPoint pt = v.is_infinity() ? e.at_infinity(p) : p;
  const QRatT a = qlift(m.a), b = qlift(m.b);
  const QRatT& x = pt.x();
  const QRatT two_y = QRatT(2) * pt.y();
  const QRatT f3 = QRatT(3) * power(x, 4) + QRatT(6) * a * x * x + QRatT(12) * b * x - a * a;

  PlaceHeight r;
  r.place = v;
  r.val_delta = val(m.place, m.delta);
  r.val_x = val(m.place, x);
  const int v2y = val(m.place, two_y);
  r.val_F2 = v2y >= kInfiniteVal ? kInfiniteVal : 2 * v2y;
  const int v3 = val(m.place, f3);
  r.val_F3 = v3 >= kInfiniteVal ? kInfiniteVal : 2 * v3;
  if (r.val_delta > 0) {
    r.type = val(m.place, m.a) == 0 ? ReductionType::Multiplicative : ReductionType::Additive;
  }
  r.smooth = r.val_delta == 0 || r.val_x < 0 || v2y == 0 || val(m.place, QRatT(3) * x * x + a) == 0;

  const Rational n(r.val_delta);
  if (r.smooth) {
    r.lambda = Rational(std::max(0, -r.val_x), 2) + n / Rational(12);
  } else if (r.type == ReductionType::Multiplicative) {
    const Rational alpha = std::min(Rational(v2y), n / Rational(2)) / n;
    r.lambda = n / Rational(2) * (alpha * alpha - alpha + Rational(1, 6));
  } else if (r.val_F3 >= 3 * r.val_F2) {
    r.lambda = n / Rational(12) - Rational(r.val_F2) / Rational(6);
  } else {
    r.lambda = n / Rational(12) - Rational(r.val_F3) / Rational(16);
  }
  return r;
}

Rational local_height(const FunctionFieldCurve& e, const FFPoint& p, const Place& v) {
  return local_height_record(e, p, v).lambda;
}

HeightReport canonical_height(const FunctionFieldCurve& e, const FFPoint& p) {
  HeightReport rep;
  if (p.is_identity()) return rep;
  std::vector<Place> places;
  for (const auto& b : bad_places(e)) places.push_back(b.place);
  for (const auto& q : pole_places(p.x())) places.push_back(q);
  places.push_back(Place::infinity());
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  for (const auto& v : places) {
    PlaceHeight r = local_height_record(e, p, v);
    if (r.val_delta == 0 && r.lambda.is_zero()) continue;
    rep.total += Rational(v.degree()) * r.lambda;
    rep.per_place.push_back(std::move(r));
  }
  return rep;
}

Rational height_pairing(const FunctionFieldCurve& e, const FFPoint& p, const FFPoint& q) {
  const Rational sum = canonical_height(e, add(e.group(), p, q)).total;
  return (sum - canonical_height(e, p).total - canonical_height(e, q).total) / Rational(2);
}

RatT j_invariant_ff(const FunctionFieldCurve& e) {
  const PolyT four_a3 = PolyT(Rational(4), Var::T) * power(e.a(), 3);
  return RatT(PolyT(Rational(1728), Var::T) * four_a3, four_a3 + PolyT(Rational(27), Var::T) * e.b() * e.b());
}

FunctionFieldCurve family_surface(const Rational& s) {
  if (s.is_zero()) throw DegenerateS("s = 0 gives a singular surface");
  const PolyT t = tvar();
  const PolyT l = tc(Rational(1) - s) - tc(Rational(3)) * t;
  return FunctionFieldCurve(RatT(tc(Rational(-3)) * t * t), RatT(tc(Rational(2)) * power(t, 3) + tc(s) * l * l));
}

FFPoint family_P(const Rational& s) {
  const PolyT t = tvar();
  return FFPoint(qlift(tc(Rational(1) - s) - tc(Rational(2)) * t), qlift(tc(Rational(1) - s) - tc(Rational(3)) * t));
}

FFPoint family_Q(const Rational& s) {
  const PolyT t = tvar();
  const QRatT root(Poly<QuadExt>(QuadExt::sqrt_of(s), Var::T));
  return FFPoint(qlift(t), qlift(tc(Rational(1) - s) - tc(Rational(3)) * t) * root);
}

FFPoint galois_conjugate(const FFPoint& p) {
  if (p.is_identity()) return p;
  return FFPoint(conj(p.x()), conj(p.y()));
}

GenericRank generic_rank(const Rational& s) {
  if (s.is_zero()) throw DegenerateS("s = 0");
  const FunctionFieldCurve e = family_surface(s);
  const FFPoint p = family_P(s), q = family_Q(s);
  GenericRank g;
  RankEvidence& ev = g.evidence;
  ev.shioda_tate_bound = shioda_tate_rank(bad_places(e));
  const Rational hp = canonical_height(e, p).total;
  ev.heights.push_back({"P", hp});

  if (s == Rational(1)) {
    ev.p_is_minus_2q = p == negate(e.group(), scalar_mul(e.group(), 2, q));
    ev.gram = {{hp}};
    g.rank = hp.sign() > 0 ? std::min(1, ev.shioda_tate_bound) : 0;
    ev.notes.push_back("Shioda-Tate bound " + std::to_string(ev.shioda_tate_bound) + " and h(P) = " +
                       to_string(hp) + " > 0");
    if (*ev.p_is_minus_2q) ev.notes.push_back("P = -2Q");
    return g;
  }

  const Rational hq = canonical_height(e, q).total;
  const Rational hpq = canonical_height(e, add(e.group(), p, q)).total;
  ev.heights.push_back({"Q", hq});
  ev.heights.push_back({"P+Q", hpq});
  const Rational pq = (hpq - hp - hq) / Rational(2);
  ev.gram = {{hp, pq}, {pq, hq}};
  const Rational det = hp * hq - pq * pq;
  const bool independent = det.sign() > 0;
  if (pq.is_zero()) ev.notes.push_back("h(P) + h(Q) = h(P+Q): P and Q are orthogonal");

  if (exact_root(s, 2)) {
    g.rank = independent ? 2 : (hp.sign() > 0 ? 1 : 0);
    ev.notes.push_back("s is a square, so Q is defined over Q(T); Gram determinant " + to_string(det));
    return g;
  }
  ev.galois_negates_q = galois_conjugate(q) == negate(e.group(), q);
  ev.galois_fixes_p = galois_conjugate(p) == p;
  g.rank = hp.sign() > 0 ? 1 : 0;
  ev.notes.push_back("geometric rank " + std::string(independent ? "2" : "< 2") + " via the Gram determinant " +
                     to_string(det));
  ev.notes.push_back(
      "sqrt(s) -> -sqrt(s) sends Q to -Q and fixes P, so every rational multiple of a point of E(Q(T)) lies in "
      "Z*P (Galois argument cited, not recomputed)");
  return g;
}

const char* reduction_type_name(ReductionType t) {
  switch (t) {
    case ReductionType::Good:
      return "good";
    case ReductionType::Multiplicative:
      return "multiplicative";
    case ReductionType::Additive:
      return "additive";
  }
  return "?";
}

namespace {

struct TableData {
  Rational s;
  FunctionFieldCurve e;
  std::vector<ReductionProfile> places;
  int bound = 0;
  std::vector<std::pair<std::string, FFPoint>> points;
};

TableData table_data(const Rational& s) {
  TableData d{s, family_surface(s), {}, 0, {}};
  d.places = bad_places(d.e);
  d.bound = shioda_tate_rank(d.places);
  const FFPoint p = family_P(s);
  d.points.push_back({"P", p});
  if (s != Rational(1)) {
    const FFPoint q = family_Q(s);
    d.points.push_back({"Q", q});
    d.points.push_back({"P+Q", add(d.e.group(), p, q)});
  }
  return d;
}

std::string model_string(const PolyT& a, const PolyT& b, bool infinity) {
  const std::string y = infinity ? "y'" : "y", x = infinity ? "x'" : "x";
  return y + "^2=" + x + "^3 + (" + to_string(a) + ")" + x + " + (" + to_string(b) + ")";
}

std::string shioda_tate_formula(const std::vector<ReductionProfile>& places) {
  int sum = 0, bad = 0, additive = 0;
  for (const auto& p : places) {
    sum += p.geometric_multiplicity * p.val_delta;
    bad += p.geometric_multiplicity;
    if (p.type == ReductionType::Additive) additive += p.geometric_multiplicity;
  }
  return "8-" + std::to_string(sum) + "+" + std::to_string(bad) + "+" + std::to_string(additive);
}

}  // namespace

nlohmann::ordered_json heights_json(const Rational& s) {
  using J = nlohmann::ordered_json;
  const TableData d = table_data(s);
  J j;
  j["s"] = rational_to_json(s);
  j["models"] = J{{"finite", J{{"equation", model_string(d.e.a(), d.e.b(), false)},
                              {"a", poly_to_json(d.e.a())},
                              {"b", poly_to_json(d.e.b())},
                              {"discriminant", factored(d.e.discriminant())}}},
                  {"infinity", J{{"equation", model_string(d.e.a_inf(), d.e.b_inf(), true)},
                                 {"a", poly_to_json(d.e.a_inf())},
                                 {"b", poly_to_json(d.e.b_inf())},
                                 {"discriminant", factored(d.e.discriminant_at_infinity())}}}};
  J cols = J::array();
  cols.push_back(J{{"t", "not in R"}, {"val_delta", 0}, {"type", "good"}});
  int sum = 0;
  for (const auto& p : d.places) {
    sum += p.geometric_multiplicity * p.val_delta;
    cols.push_back(J{{"t", column_label(p.place)},
                     {"place", p.place.label()},
                     {"degree", p.geometric_multiplicity},
                     {"val_delta", p.val_delta},
                     {"reduction", p.reduction},
                     {"type", reduction_type_name(p.type)},
                     {"components", p.components}});
  }
  j["places"] = cols;
  j["sum_val_delta"] = sum;
  j["shioda_tate"] = J{{"formula", shioda_tate_formula(d.places)}, {"bound", d.bound}};
  J pts = J::array();
  for (const auto& [name, pt] : d.points) {
    const FFPoint inf = d.e.at_infinity(pt);
    J rows = J::array();
    rows.push_back(J{{"t", "not in R"}, {"reduction", "smooth"}, {"lambda", rational_to_json(Rational(0))}});
    for (const auto& p : d.places) {
      const PlaceHeight h = local_height_record(d.e, pt, p.place);
      rows.push_back(J{{"t", column_label(p.place)},
                       {"reduction", h.smooth ? "smooth" : "singular"},
                       {"val_x", h.val_x},
                       {"val_2y", h.val_F2 / 2},
                       {"val_F2", h.val_F2},
                       {"val_F3", h.val_F3},
                       {"lambda", rational_to_json(h.lambda)}});
    }
    pts.push_back(J{{"name", name},
                    {"finite", J{{"x", to_string(pt.x())}, {"y", to_string(pt.y())}}},
                    {"infinity", J{{"x", to_string(inf.x())}, {"y", to_string(inf.y())}}},
                    {"rows", rows},
                    {"sum", rational_to_json(canonical_height(d.e, pt).total)}});
  }
  j["points"] = pts;
  return j;
}

std::string heights_markdown(const Rational& s) {
  const TableData d = table_data(s);
  std::ostringstream out;
  out << "## s = " << to_string(s) << "\n\n";
  out << "| model | T | T' |\n|---|---|---|\n";
  out << "| equation | " << model_string(d.e.a(), d.e.b(), false) << " | "
      << model_string(d.e.a_inf(), d.e.b_inf(), true) << " |\n";
  out << "| Delta | " << factored(d.e.discriminant()) << " | " << factored(d.e.discriminant_at_infinity())
      << " |\n\n";
  out << "| t | not in R |";
  for (const auto& p : d.places) out << " " << column_label(p.place) << " |";
  out << " sum |\n|---|---|";
  for (std::size_t i = 0; i <= d.places.size(); ++i) out << "---|";
  out << "\n| val_t(Delta) | 0 |";
  int sum = 0;
  for (const auto& p : d.places) {
    out << " " << p.val_delta << " |";
    sum += p.geometric_multiplicity * p.val_delta;
  }
  out << " " << sum << " |\n| reduction | |";
  for (const auto& p : d.places) out << " " << p.reduction << " |";
  out << " |\n| type | good |";
  for (const auto& p : d.places) out << " " << reduction_type_name(p.type) << " |";
  out << " |\n";
  for (const auto& [name, pt] : d.points) {
    std::ostringstream flags, lambdas;
    for (const auto& p : d.places) {
      const PlaceHeight h = local_height_record(d.e, pt, p.place);
      flags << " " << (h.smooth ? "smooth" : "singular") << " |";
      lambdas << " " << to_string(h.lambda) << " |";
    }
    out << "| " << name << "_t | smooth |" << flags.str() << " |\n";
    out << "| lambda_t(" << name << ") | 0 |" << lambdas.str() << " " << to_string(canonical_height(d.e, pt).total)
        << " |\n";
  }
  out << "\nShioda-Tate: " << shioda_tate_formula(d.places) << " = " << d.bound << "\n";
  return out.str();
}

nlohmann::ordered_json rank_json(const Rational& s) {
  using J = nlohmann::ordered_json;
  const GenericRank g = generic_rank(s);
  J j;
  j["s"] = rational_to_json(s);
  j["rank"] = g.rank;
  j["shioda_tate_bound"] = g.evidence.shioda_tate_bound;
  J h = J::object();
  for (const auto& [name, v] : g.evidence.heights) h[name] = rational_to_json(v);
  j["heights"] = h;
  J gram = J::array();
  for (const auto& row : g.evidence.gram) {
    J r = J::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    gram.push_back(r);
  }
  j["gram"] = gram;
  auto opt = [](const std::optional<bool>& b) { return b ? J(*b) : J(nullptr); };
  j["p_is_minus_2q"] = opt(g.evidence.p_is_minus_2q);
  j["galois_negates_q"] = opt(g.evidence.galois_negates_q);
  j["galois_fixes_p"] = opt(g.evidence.galois_fixes_p);
  j["notes"] = g.evidence.notes;
  return j;
}

}  // namespace cleanpair
