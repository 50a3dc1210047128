#include "cleanpair/curve.hpp"

#include <algorithm>

#include "cleanpair/factor.hpp"

namespace cleanpair {

namespace {

bool integral(const CurveQ& e) { return e.a().is_integer() && e.b().is_integer(); }

int padic(const Integer& n, const Integer& p) {
  if (n == 0) return 0;
  Integer m = n;
  int k = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

}  // namespace

TorsionCheck is_torsion_overQ(const CurveQ& e, const PointQ& p) {
  if (p.is_identity()) return {true, 1};
  const bool lutz_nagell = integral(e);
  PointQ q = p;
  for (int n = 1; n <= 12; ++n) {
    if (q.is_identity()) return {true, n};
    // On an integral model every torsion point has integer coordinates.
    if (lutz_nagell && !(q.x().is_integer() && q.y().is_integer())) return {false, 0};
    q = add(e, q, p);
  }
  return {false, 0};
}

std::vector<PointQ> torsion_points_overQ(const CurveQ& e) {
  if (!integral(e)) throw ModelError("Lutz-Nagell needs an integral model; scale first");
  const Integer a = e.a().num(), b = e.b().num();
  const Integer disc = 4 * a * a * a + 27 * b * b;

  std::vector<Integer> ys{0};
  {
    std::vector<Integer> acc{1};
    for (const auto& [p, k] : factor_integer(disc)) {
      std::vector<Integer> next;
      for (const auto& y : acc) {
        Integer pw = 1;
        for (int i = 0; 2 * i <= k; ++i) {
          next.push_back(y * pw);
          pw *= p;
        }
      }
      acc = std::move(next);
    }
    ys.insert(ys.end(), acc.begin(), acc.end());
  }

  std::vector<PointQ> out{PointQ::identity()};
  for (const auto& y : ys) {
    for (const auto& x : integer_roots_depressed_cubic(a, b - y * y)) {
      for (int sign : {1, -1}) {
        if (y == 0 && sign < 0) continue;
        PointQ pt(Rational(x), Rational(sign * y));
        if (is_torsion_overQ(e, pt).torsion) out.push_back(pt);
      }
    }
  }
  std::sort(out.begin() + 1, out.end(), [](const PointQ& p, const PointQ& q) {
    if (p.x() != q.x()) return p.x() < q.x();
    return p.y() < q.y();
  });
  return out;
}

CurveQ IsomorphismWitness::apply(const CurveQ& e) const {
  return CurveQ(pow(d, 4) * e.a(), pow(d, 6) * e.b());
}

PointQ IsomorphismWitness::apply(const PointQ& p) const {
  if (p.is_identity()) return p;
  return PointQ(d * d * p.x(), d * d * d * p.y());
}

std::optional<IsomorphismWitness> are_isomorphic(const CurveQ& source, const CurveQ& target) {
  const Rational &a1 = source.a(), &b1 = source.b(), &a2 = target.a(), &b2 = target.b();
  if (a1.is_zero() != a2.is_zero() || b1.is_zero() != b2.is_zero()) return std::nullopt;
  if (a1.is_zero()) {
    auto d = exact_root(b2 / b1, 6);
    if (!d) return std::nullopt;
    return IsomorphismWitness{*d};
  }
  if (b1.is_zero()) {
    auto d = exact_root(a2 / a1, 4);
    if (!d) return std::nullopt;
    return IsomorphismWitness{*d};
  }
  const Rational u = (b2 * a1) / (b1 * a2);  // d^2
  if (u * u != a2 / a1 || u * u * u != b2 / b1) return std::nullopt;
  auto d = exact_root(u, 2);
  if (!d) return std::nullopt;
  return IsomorphismWitness{*d};
}

IntegralModel integral_model(const CurveQ& e) {
  Integer u = 1;
  const Integer da = e.a().den(), db = e.b().den();
  Integer both = da * db;
  if (both != 1) {
    for (const auto& [p, k] : factor_integer(both)) {
      const int va = padic(da, p), vb = padic(db, p);
      const int need = std::max((va + 3) / 4, (vb + 5) / 6);
      Integer pw;
      mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(need));
      u *= pw;
    }
  }
  IsomorphismWitness w{Rational(u)};
  return {u, w.apply(e), w};
}

Normalization normalize_to_family(const CurveQ& e, const Rational& t, const PointQ& p_in) {
  if (e.a() != Rational(-3) * t * t) {
    throw ShapeError("a = " + to_string(e.a()) + " is not -3t^2 for t = " + to_string(t));
  }
  if (p_in.is_identity()) throw TorsionError("identity point");
  if (p_in.y().is_zero()) throw TorsionError("2-torsion point");
  if (!on_curve(e, p_in)) throw NotOnCurve(to_string(p_in));
  if (is_torsion_overQ(e, p_in).torsion) throw TorsionError(to_string(p_in) + " is torsion");

  Normalization out;
  PointQ p = p_in;
  if (p.x() == t) {
    p = scalar_mul(e, -2, p);
    out.replaced_by_minus_two = true;
    if (p.x() == t) throw ShapeError("x(-2P) = t");
  }
  const Rational y2 = p.y() * p.y();
  out.s = (e.b() - Rational(2) * t * t * t) / y2;
  out.witness = IsomorphismWitness{(p.x() - t) / p.y()};
  out.t = out.witness.d * out.witness.d * t;
  out.point = out.witness.apply(p);

  const Rational one_s = Rational(1) - out.s;
  const Rational l = one_s - Rational(3) * out.t;
  const CurveQ family(Rational(-3) * out.t * out.t, Rational(2) * pow(out.t, 3) + l * l * out.s);
  if (!(out.witness.apply(e) == family) || !(out.point == PointQ(one_s - Rational(2) * out.t, l))) {
    throw ModelError("normalization did not land on the family");
  }
  return out;
}

}  // namespace cleanpair
