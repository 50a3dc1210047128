// Acceptance checks, one per criterion. `acceptance --criterion N` prints a
// single PASS/FAIL/SKIP line; without arguments every criterion runs.
// Exit status: 0 pass, 1 fail, 77 skip (data not present).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cleanpair/certificate.hpp"
#include "cleanpair/cli.hpp"
#include "cleanpair/family.hpp"
#include "cleanpair/ffheights.hpp"
#include "cleanpair/place.hpp"
#include "cleanpair/search.hpp"

using namespace cleanpair;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      status = Status::Fail;
      detail << " [failed: " << what << "]";
    }
  }
};

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
PolyT T() { return PolyT::variable(Var::T); }
PolyT c(const Rational& v) { return PolyT(v, Var::T); }

using Ps = Poly<Rational>;
using K = RatFunc<Rational>;  // Q(S)
using KT = Poly<K>;           // Q(S)[T]

K sym_s() { return K(Ps::variable(Var::S)); }
KT kt(const K& v) { return KT(v, Var::T); }

void discriminant_identity(Outcome& o) {
  using PST = Poly<Ps>;
  const PST s(Ps::variable(Var::S), Var::T);
  const PST t = PST::variable(Var::T);
  const auto [a, b] = family_coefficients(s, t);
  const PST lhs = PST(Ps(Rational(-16), Var::S), Var::T) * (PST(Ps(Rational(4), Var::S), Var::T) * a * a * a +
                                                            PST(Ps(Rational(27), Var::S), Var::T) * b * b);
  const PST l = PST(Ps(Rational(1), Var::S), Var::T) - s - PST(Ps(Rational(3), Var::S), Var::T) * t;
  const PST rhs = PST(Ps(Rational(-432), Var::S), Var::T) * s * l * l *
                  (PST(Ps(Rational(4), Var::S), Var::T) * t * t * t + l * l * s);
  o.require(lhs == rhs, "-16(4a^3+27b^2) == -432 S l^2 (4T^3 + l^2 S)");
  o.detail << "bivariate expansion exact";
}

void s1_table(Outcome& o) {
  const FunctionFieldCurve e = family_surface(q(1));
  const auto ps = bad_places(e);
  int sum = 0;
  bool shape = ps.size() == 3;
  for (const auto& p : ps) {
    sum += p.val_delta * p.geometric_multiplicity;
    if (p.place == Place::finite(T())) shape = shape && p.val_delta == 4 && p.type == ReductionType::Additive;
    else if (p.place == Place::finite(T() + c(q(9, 4)))) shape = shape && p.val_delta == 1 && p.type == ReductionType::Multiplicative;
    else if (p.place.is_infinity()) shape = shape && p.val_delta == 7 && p.type == ReductionType::Additive;
    else shape = false;
  }
  o.require(shape, "bad places (T) val 4 additive, (T+9/4) val 1 multiplicative, inf val 7 additive");
  o.require(sum == 12, "sum of valuations 12");
  o.require(shioda_tate_rank(ps) == 1, "Shioda-Tate 8-12+3+2 = 1");
  const FFPoint p = family_P(q(1));
  o.require(local_height(e, p, Place::finite(T())) == q(0), "lambda_(T) = 0");
  o.require(local_height(e, p, Place::finite(T() + c(q(9, 4)))) == q(1, 12), "lambda_(T+9/4) = 1/12");
  o.require(local_height(e, p, Place::infinity()) == q(1, 12), "lambda_inf = 1/12");
  const Rational h = canonical_height(e, p).total;
  o.require(h == q(1, 6), "h(P) = 1/6");
  const auto j = heights_json(q(1));
  o.require(j["shioda_tate"]["formula"] == "8-12+3+2" && j["sum_val_delta"] == 12, "report layout");
  o.detail << "sum=" << sum << " bound=" << shioda_tate_rank(ps) << " h(P)=" << h;
}

void split_s_heights(Outcome& o) {
  for (const Rational& s : {q(2), q(4), q(9, 4)}) {
    const FunctionFieldCurve e = family_surface(s);
    const auto ps = bad_places(e);
    int geometric = 0, at_line = 0, at_cubic = 0, at_inf = 0;
    const Place line = Place::finite(T() - c((q(1) - s) / q(3)));
    for (const auto& p : ps) {
      geometric += p.geometric_multiplicity;
      if (p.place == line) at_line += p.geometric_multiplicity;
      else if (p.place.is_infinity()) at_inf += 1;
      else at_cubic += p.geometric_multiplicity;
    }
    const std::string tag = "s=" + to_string(s) + ": ";
    o.require(at_line == 1 && at_cubic == 3 && at_inf == 1 && geometric == 5, tag + "1 + 3 + 1 geometric places");
    o.require(shioda_tate_rank(ps) == 2, tag + "Shioda-Tate bound 2");
    const FFPoint p = family_P(s), qq = family_Q(s);
    o.require(canonical_height(e, p).total == q(1, 4), tag + "h(P) = 1/4");
    o.require(canonical_height(e, qq).total == q(1, 8), tag + "h(Q) = 1/8");
    o.require(canonical_height(e, add(e.group(), p, qq)).total == q(3, 8), tag + "h(P+Q) = 3/8");
    o.require(height_pairing(e, p, qq) == q(0), tag + "<P,Q> = 0");
  }
  const int r1 = generic_rank(q(1)).rank, r2 = generic_rank(q(2)).rank, r4 = generic_rank(q(4)).rank,
            r94 = generic_rank(q(9, 4)).rank;
  o.require(r1 == 1 && r2 == 1 && r4 == 2 && r94 == 2, "generic ranks 1, 1, 2, 2 for s = 1, 2, 4, 9/4");
  o.detail << "generic ranks s=1:" << r1 << " s=2:" << r2 << " s=4:" << r4 << " s=9/4:" << r94;
}

void quartic_discriminant(Outcome& o) {
  const K s = sym_s();
  const KT t = KT::variable(Var::T);
  const KT l = kt(K(1) - s) - kt(K(3)) * t;
  const KT quartic = l * (kt(K(4)) * t * t * t + l * l * kt(s));
  const Ps sp = Ps::variable(Var::S);
  const K expected(Ps(Rational(6912), Var::S) * power(sp - Ps(Rational(1), Var::S), 9) * sp * sp);
  const K got = discriminant(quartic);
  o.require(got == expected, "disc_T = 6912 (s-1)^9 s^2");
  o.detail << "disc = " << to_string(got.num()) << (got.den() == Ps(Rational(1), Var::S) ? "" : " / ...");
}

void j_invariant(Outcome& o) {
  // Computed over Q(s)(T) with s symbolic: j = 1728 * 4a^3 / (4a^3 + 27b^2).
  const K s = sym_s();
  const KT t = KT::variable(Var::T);
  const auto [a, b] = family_coefficients(kt(s), t);
  const KT four_a3 = kt(K(4)) * a * a * a;
  const RatFunc<K> j(kt(K(1728)) * four_a3, four_a3 + kt(K(27)) * b * b);
  const KT l = kt(K(1) - s) - kt(K(3)) * t;
  const KT den = kt(s) * l * l * (kt(s) * l * l + kt(K(4)) * t * t * t);
  const RatFunc<K> displayed(kt(K(6912)) * power(t, 6), den);
  const RatFunc<K> negated(kt(K(-6912)) * power(t, 6), den);
  o.require(j == displayed, "j == +6912 T^6 / (s l^2 (s l^2 + 4T^3))");
  o.detail << "computed j " << (j == displayed ? "equals" : "differs from") << " the displayed +6912 form and "
           << (j == negated ? "equals" : "differs from") << " -6912 T^6 / (s l^2 (s l^2 + 4T^3))";

  // The surface-level j at sample s agrees with whichever closed form held.
  const Rational sign = j == displayed ? q(1) : q(-1);
  for (const Rational& sv : {q(1), q(2), q(-3, 7)}) {
    const PolyT lv = c(q(1) - sv) - c(q(3)) * T();
    const RatT expect(c(sign * q(6912)) * power(T(), 6), c(sv) * lv * lv * (c(sv) * lv * lv + c(q(4)) * power(T(), 3)));
    o.require(j_invariant_ff(family_surface(sv)) == expect, "surface j at s=" + to_string(sv));
  }
}

Json leaf_mutation(const Json& leaf) {
  if (leaf.is_boolean()) return !leaf.get<bool>();
  if (leaf.is_number_integer()) return leaf.get<long>() + 1;
  if (leaf.is_null()) return 0;
  if (leaf.is_string()) {
    const std::string s = leaf.get<std::string>();
    try {
      const Rational r = Rational::parse(s);
      if (r.wire() == s) return (r + Rational(1)).wire();
    } catch (const std::exception&) {
    }
    return s + "x";
  }
  return Json::array({1});
}

void collect_leaves(const Json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) collect_leaves(it.value(), path + "/" + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], path + "/" + std::to_string(i), out);
    if (j.empty()) out.push_back(path);
  } else {
    out.push_back(path);
  }
}

void certificate_end_to_end(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string path = (std::filesystem::temp_directory_path() / "cleanpair_acceptance_cert.json").string();
  std::ostringstream out, err;
  const char* certify[] = {"cleanpair", "certify", "1", "1", "2", "--out", path.c_str()};
  o.require(cli_main(7, certify, out, err) == 0, "certify 1 1 2 exits 0");
  const char* verify[] = {"cleanpair", "verify", path.c_str()};
  std::ostringstream vout;
  o.require(cli_main(3, verify, vout, err) == 0 && vout.str() == "OK\n", "verify accepts");
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  o.require(ms < 1000, "certify + verify under 1 s");
  std::filesystem::remove(path);

  const CleanPairCertificate cert =
      assemble_certificate(pair_hypothesis(make_member(q(1), q(1)), make_member(q(1), q(2))));
  const PolyQ lam = PolyQ::variable(Var::Lambda);
  auto cl = [](const Rational& v) { return PolyQ(v, Var::Lambda); };
  const RatQ tau(cl(q(-1)) * (cl(q(3)) * lam * lam - cl(q(3, 2))), lam * lam * lam - cl(q(1, 4)));
  o.require(cert.r == q(1, 2), "r = 1/2");
  o.require(cert.plus.node.t1 == q(1) && cert.plus.node.t2 == q(2), "node (1,2)");
  o.require(cert.plus.par.tau == tau, "tau = -(3l^2-3/2)/(l^3-1/4)");
  o.require(cert.plus.witness.lambda_p == q(1, 2), "lambda_P = 1/2");
  o.require(cert.conclusion.multiplier == 3 || cert.conclusion.multiplier == 1, "m = 3 or 1");

  const Json doc = certificate_to_json(cert);
  std::vector<std::string> paths;
  collect_leaves(doc, "", paths);
  std::size_t caught = 0;
  for (const auto& p : paths) {
    Json m = doc;
    const Json::json_pointer ptr(p);
    m[ptr] = leaf_mutation(doc[ptr]);
    try {
      caught += !verify_certificate(certificate_from_json(m)).ok;
    } catch (const CertificateFormatError&) {
      ++caught;
    }
  }
  o.require(caught == paths.size(), "every single-field mutation rejected");
  o.detail << "m=" << cert.conclusion.multiplier << " mutations rejected " << caught << "/" << paths.size()
           << " certify+verify " << static_cast<long>(ms) << " ms";
}

RatT double_x(const RatT& x, const RatT& a, const RatT& b) {
  return ((x * x - a) * (x * x - a) - RatT(c(q(8))) * b * x) / (RatT(c(q(4))) * (x * x * x + a * x + b));
}

void property_suites(Outcome& o) {
  std::mt19937_64 rng(20241014);
  std::uniform_int_distribution<int> k(-6, 6);
  int assoc = 0;
  for (const Rational& t : {q(1), q(2)}) {
    const FamilyMember m = make_member(q(1), t);
    for (int i = 0; i < 100; ++i) {
      const PointQ x = scalar_mul(m.curve, k(rng), m.point), y = scalar_mul(m.curve, k(rng), m.point),
                   z = scalar_mul(m.curve, k(rng), m.point);
      assoc += add(m.curve, add(m.curve, x, y), z) == add(m.curve, x, add(m.curve, y, z));
    }
  }
  o.require(assoc == 200, "associativity on 200 triples");

  for (const Rational& s : {q(1), q(2)}) {
    const FunctionFieldCurve e = family_surface(s);
    const FFPoint p = family_P(s);
    o.require(canonical_height(e, add(e.group(), p, p)).total == Rational(4) * canonical_height(e, p).total,
              "h(2P) = 4h(P) at s=" + to_string(s));
  }

  const RatT a(c(q(-3)) * T() * T()), b(c(q(2)) * power(T(), 3) + c(q(9)) * T() * T());
  RatT x(c(q(-2)) * T());
  Rational unit(1);
  for (int n = 0; n <= 4; ++n) {
    const Rational approx = Rational(x.height_degree()) / (Rational(2) * unit);
    o.require((approx - q(1, 6)).abs() <= Rational(4) / unit, "doubling limit n=" + std::to_string(n));
    if (n == 4) break;
    x = double_x(x, a, b);
    unit *= Rational(4);
  }

  std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
  int normalized = 0;
  while (normalized < 50) {
    const Rational s(Integer(num(rng)), Integer(den(rng))), t(Integer(num(rng)), Integer(den(rng)));
    const FamilyMember m = make_member(s, t);
    const Rational d(Integer(num(rng)), Integer(den(rng)));
    if (!m.in_u || d.is_zero()) continue;
    const IsomorphismWitness w{d};
    const Normalization r = normalize_to_family(w.apply(m.curve), d * d * t, w.apply(m.point));
    o.require(r.s == s && r.t == t && r.point == m.point, "normalization round trip");
    ++normalized;
  }

  std::uniform_int_distribution<int> deg(0, 4), coef(-9, 9), cden(1, 9);
  auto poly = [&] {
    for (;;) {
      std::vector<Rational> cs(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& v : cs) v = Rational(Integer(coef(rng)), Integer(cden(rng)));
      PolyQ p(std::move(cs), Var::T);
      if (!p.is_zero()) return p;
    }
  };
  int valuations = 0;
  for (int i = 0; i < 200; ++i) {
    const RatFunc<Rational> f(poly(), poly()), g(poly(), poly());
    bool ok = true;
    int total = 0;
    for (const auto& [v, mult] : divisor_of(f)) {
      total += v.degree() * mult;
      ok = ok && valuation_at(v, f * g) == mult + valuation_at(v, g);
    }
    ok = ok && total == 0 && valuation_at(Place::infinity(), f * g) ==
                                 valuation_at(Place::infinity(), f) + valuation_at(Place::infinity(), g);
    valuations += ok;
  }
  o.require(valuations == 200, "valuation product and degree formulas on 200 functions");
  o.detail << "assoc 200/200, normalization 50/50, valuations " << valuations << "/200";
}

void table1_totals(Outcome& o) {
  const long bounds[] = {10, 20, 30, 40, 50, 60};
  const std::size_t expected[] = {823, 4710, 13055, 26828, 46956, 74069};
  double ms10 = 0, ms60 = 0;
  for (int i = 0; i < 6; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = enumerate_s1(bounds[i]);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (bounds[i] == 10) ms10 = ms;
    if (bounds[i] == 60) ms60 = ms;
    std::size_t n = 0;
    for (const auto& r : recs) n += r.candidate();
    o.detail << " H=" << bounds[i] << ":" << n << "/" << expected[i];
    o.require(n == expected[i], "H=" + std::to_string(bounds[i]) + " candidate count");
  }
  o.require(ms10 < 10'000, "H=10 under 10 s");
  o.require(ms60 < 600'000, "H=60 under 10 min");
  if (o.status == Status::Fail) {
    o.detail << "; sweep:";
    for (long H : {10L, 60L}) {
      for (const auto& row : convention_sweep(H)) {
        o.detail << " H=" << H << " " << row.convention.name() << "=" << row.candidates;
      }
    }
  }
  o.detail << "; H=10 " << static_cast<long>(ms10) << " ms, H=60 " << static_cast<long>(ms60) << " ms";
}

std::string db_path() {
  if (const char* env = std::getenv("CLEANPAIR_CREMONA_DB")) return env;
  return CLEANPAIR_DEFAULT_DB;
}

void curve_table_filters(Outcome& o) {
  const std::string path = db_path();
  if (!std::filesystem::exists(path)) {
    o.status = Status::Skip;
    o.detail << "no curve table at " << path << " (set CLEANPAIR_CREMONA_DB)";
    return;
  }
  const DbFilterReport rep = filter_db_family_candidates(load_db(path));
  auto has = [&](const char* label) { return std::find(rep.square.begin(), rep.square.end(), label) != rep.square.end(); };
  o.require(rep.shape.size() == 91, "shape count 91");
  o.require(rep.eligible.size() == 89, "eligible count 89");
  o.require(rep.square.size() == 16, "square count 16");
  o.require(has("43a1") && has("400c1"), "43a1 and 400c1 listed");
  o.detail << "shape=" << rep.shape.size() << " eligible=" << rep.eligible.size() << " square=" << rep.square.size();
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
  double limit_ms;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"discriminant identity", discriminant_identity, 1'000},
      {"s = 1 heights table", s1_table, 1'000},
      {"s in {2, 4, 9/4} heights and generic rank", split_s_heights, 5'000},
      {"place discriminant in s", quartic_discriminant, 1'000},
      {"j-invariant", j_invariant, 1'000},
      {"certificate end to end", certificate_end_to_end, 60'000},
      {"property suites", property_suites, 60'000},
      {"s = 1 search candidate totals", table1_totals, 600'000},
      {"curve table filters", curve_table_filters, 30'000},
  };
  return all;
}

int run_one(int n) {
  const Criterion& c = criteria().at(static_cast<std::size_t>(n - 1));
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.status = Status::Fail;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (o.status == Status::Pass && ms > c.limit_ms) {
    o.status = Status::Fail;
    o.detail << " [over time limit " << c.limit_ms << " ms]";
  }
  const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
  std::cout << "criterion " << n << " " << tag << " " << c.name << " (" << static_cast<long>(ms) << " ms): "
            << o.detail.str() << std::endl;
  return o.status == Status::Pass ? 0 : o.status == Status::Fail ? 1 : 77;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int which = 0;
  app.add_option("--criterion", which, "run one criterion")->check(CLI::Range(1, static_cast<int>(criteria().size())));
  CLI11_PARSE(app, argc, argv);
  if (which != 0) return run_one(which);
  int worst = 0;
  for (int n = 1; n <= static_cast<int>(criteria().size()); ++n) {
    const int r = run_one(n);
    if (r == 1) worst = 1;
  }
  return worst;
}
