#include "cleanpair/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "intpoly.hpp"

namespace cleanpair {

namespace {

using intpoly::ZPoly;

// ---- polynomials over F_p, p < 2^31 -------------------------------------

using Fp = std::vector<std::uint64_t>;

struct ModP {
  std::uint64_t p;

  void trim(Fp& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  static int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

  std::uint64_t pow(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  Fp from(const ZPoly& z) const {
    Fp r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = mpz_fdiv_ui(z[i].get_mpz_t(), p);
    trim(r);
    return r;
  }

  Fp sub(Fp a, const Fp& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
  }

  Fp mul(const Fp& a, const Fp& b) const {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }

  // Returns quotient, leaves remainder in a.
  Fp divmod(Fp& a, const Fp& b) const {
    const int db = deg(b);
    if (deg(a) < db) return {};
    const std::uint64_t li = inv(b.back());
    Fp q(static_cast<std::size_t>(deg(a) - db + 1), 0);
    for (int i = deg(a); i >= db; --i) {
      const std::uint64_t c = a[static_cast<std::size_t>(i)] * li % p;
      q[static_cast<std::size_t>(i - db)] = c;
      if (!c) continue;
      for (int j = 0; j <= db; ++j) {
        auto& x = a[static_cast<std::size_t>(i - db + j)];
        x = (x + p - c * b[static_cast<std::size_t>(j)] % p) % p;
      }
    }
    a.resize(static_cast<std::size_t>(db));
    trim(a);
    trim(q);
    return q;
  }

  Fp mod(Fp a, const Fp& b) const {
    divmod(a, b);
    return a;
  }
  Fp quo(Fp a, const Fp& b) const { return divmod(a, b); }

  Fp monic(Fp a) const {
    if (a.empty()) return a;
    const std::uint64_t li = inv(a.back());
    for (auto& c : a) c = c * li % p;
    return a;
  }

  Fp gcd(Fp a, Fp b) const {
    while (!b.empty()) {
      Fp r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // s*a + t*b = 1 for coprime a, b.
  std::pair<Fp, Fp> bezout(const Fp& a, const Fp& b) const {
    Fp r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
      Fp r = r0;
      Fp q = divmod(r, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      Fp s2 = sub(s0, mul(q, s1));
      Fp t2 = sub(t0, mul(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    const std::uint64_t li = inv(r0.back());
    for (auto& c : s0) c = c * li % p;
    for (auto& c : t0) c = c * li % p;
    return {s0, t0};
  }

  Fp powmod(Fp base, std::uint64_t e, const Fp& m) const {
    Fp r{1};
    base = mod(base, m);
    while (e) {
      if (e & 1) r = mod(mul(r, base), m);
      e >>= 1;
      if (e) base = mod(mul(base, base), m);
    }
    return r;
  }

  Fp derivative(const Fp& a) const {
    Fp r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
    trim(r);
    return r;
  }
};

std::vector<std::pair<Fp, int>> distinct_degree(const ModP& F, Fp f) {
  std::vector<std::pair<Fp, int>> out;
  const Fp x{0, 1};
  Fp h = F.mod(x, f);
  int d = 0;
  while (ModP::deg(f) >= 2 * (d + 1)) {
    ++d;
    h = F.powmod(h, F.p, f);
    Fp g = F.gcd(F.sub(h, x), f);
    if (ModP::deg(g) > 0) {
      out.emplace_back(g, d);
      f = F.quo(f, g);
      h = F.mod(h, f);
    }
  }
  if (ModP::deg(f) > 0) out.emplace_back(f, ModP::deg(f));
  return out;
}

void equal_degree(const ModP& F, const Fp& g, int d, std::mt19937_64& rng, std::vector<Fp>& out) {
  const int n = ModP::deg(g);
  if (n == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coin(0, F.p - 1);
  while (true) {
    Fp a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coin(rng);
    F.trim(a);
    if (ModP::deg(a) < 1) continue;
    // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
    Fp t = a, c = a;
    for (int i = 1; i < d; ++i) {
      t = F.powmod(t, F.p, g);
      c = F.mod(F.mul(c, t), g);
    }
    c = F.powmod(c, (F.p - 1) / 2, g);
    Fp u = F.gcd(F.sub(c, Fp{1}), g);
    const int du = ModP::deg(u);
    if (du > 0 && du < n) {
      equal_degree(F, u, d, rng, out);
      equal_degree(F, F.quo(g, u), d, rng, out);
      return;
    }
  }
}

// Monic irreducible factors of a squarefree f mod p (f monic mod p).
std::vector<Fp> factor_mod_p(const ModP& F, const Fp& f, std::mt19937_64& rng) {
  std::vector<Fp> out;
  for (const auto& [g, d] : distinct_degree(F, f)) equal_degree(F, g, d, rng, out);
  return out;
}

// ---- Hensel lifting --------------------------------------------------------

ZPoly reduce(ZPoly a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  intpoly::trim(a);
  return a;
}

ZPoly to_z(const Fp& a) {
  ZPoly r;
  r.reserve(a.size());
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

ZPoly add_scaled(ZPoly a, const Fp& d, const Integer& q) {
  if (d.size() > a.size()) a.resize(d.size(), Integer(0));
  for (std::size_t i = 0; i < d.size(); ++i) a[i] += q * static_cast<unsigned long>(d[i]);
  intpoly::trim(a);
  return a;
}

// Lift target == g*h (mod p) to (mod p^k); target, g, h monic.
std::pair<ZPoly, ZPoly> hensel_pair(const ModP& F, const ZPoly& target, const Fp& g0, const Fp& h0, int k) {
  auto [s, t] = F.bezout(g0, h0);
  ZPoly g = to_z(g0), h = to_z(h0);
  Integer q = F.p;
  const Integer p(static_cast<unsigned long>(F.p));
  for (int j = 1; j < k; ++j) {
    ZPoly gh = intpoly::mul(g, h);
    ZPoly diff = target;
    if (gh.size() > diff.size()) diff.resize(gh.size(), Integer(0));
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    Fp e(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
      Integer c;
      mpz_divexact(c.get_mpz_t(), diff[i].get_mpz_t(), q.get_mpz_t());
      e[i] = mpz_fdiv_ui(c.get_mpz_t(), F.p);
    }
    F.trim(e);
    if (!e.empty()) {
      Fp dg = F.mod(F.mul(t, e), g0);
      Fp dh = F.mod(F.mul(s, e), h0);
      g = add_scaled(std::move(g), dg, q);
      h = add_scaled(std::move(h), dh, q);
    }
    q *= p;
  }
  return {g, h};
}

Integer symmetric(const Integer& c, const Integer& m, const Integer& half) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  if (r > half) r -= m;
  return r;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t n = 3; ps.size() < 400; n += 2) {
      bool prime = true;
      for (auto q : ps) {
        if (q * q > n) break;
        if (n % q == 0) {
          prime = false;
          break;
        }
      }
      if (prime) ps.push_back(n);
    }
    return ps;
  }();
  return primes;
}

// Factors of a squarefree primitive f over Z, deg f >= 1, f(0) != 0.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const int n = intpoly::degree(f);
  if (n <= 1) return {f};
  if (n == 2) {
    Integer disc = f[1] * f[1] - 4 * f[2] * f[0];
    if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) return {f};
  }

  std::mt19937_64 rng(0x5eed1234abcdULL);
  std::uint64_t best_p = 0;
  std::vector<Fp> best;
  int tried = 0;
  for (auto p : small_primes()) {
    if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
    ModP F{p};
    Fp fp = F.from(f);
    if (ModP::deg(F.gcd(fp, F.derivative(fp))) > 0) continue;
    std::vector<Fp> fs = factor_mod_p(F, F.monic(fp), rng);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = std::move(fs);
    }
    if (best.size() == 1 || ++tried >= 5) break;
  }
  if (best.size() <= 1) return {f};

  const ModP F{best_p};
  // Coefficient bound for lc * (any factor), doubled for symmetric residues.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer lc_abs = abs(f.back());
  Integer bound = 2 * lc_abs * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  int k = 1;
  Integer M = static_cast<unsigned long>(best_p);
  while (M <= bound) {
    M *= static_cast<unsigned long>(best_p);
    ++k;
  }
  Integer half = M / 2;

  // Monic image of f mod M.
  Integer lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t());
  ZPoly target = f;
  for (auto& c : target) c *= lc_inv;
  target = reduce(std::move(target), M);

  std::vector<ZPoly> lifted;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    Fp rest{1};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = F.mul(rest, best[j]);
    auto [g, h] = hensel_pair(F, target, best[i], rest, k);
    lifted.push_back(reduce(std::move(g), M));
    target = reduce(std::move(h), M);
  }
  lifted.push_back(target);

  std::vector<ZPoly> out;
  ZPoly cur = f;
  int size = 1;
  while (2 * size <= static_cast<int>(lifted.size())) {
    bool found = false;
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    do {
      const Integer& lc = cur.back();
      // Constant-term screen before forming the full product.
      Integer c0 = lc;
      for (int i : idx) c0 = symmetric(c0 * lifted[static_cast<std::size_t>(i)][0], M, half);
      if (c0 == 0 || !mpz_divisible_p(Integer(lc * cur[0]).get_mpz_t(), c0.get_mpz_t())) continue;
      ZPoly g{lc};
      for (int i : idx) g = reduce(intpoly::mul(g, lifted[static_cast<std::size_t>(i)]), M);
      for (auto& c : g) c = symmetric(c, M, half);
      intpoly::trim(g);
      g = intpoly::primitive(std::move(g));
      ZPoly q;
      if (intpoly::degree(g) > 0 && intpoly::divides(g, cur, &q)) {
        out.push_back(g);
        cur = intpoly::primitive(std::move(q));
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) lifted.erase(lifted.begin() + *it);
        found = true;
        break;
      }
    } while (next_combination(idx, static_cast<int>(lifted.size())));
    if (!found) ++size;
  }
  if (intpoly::degree(cur) > 0) out.push_back(cur);
  return out;
}

// Yun's squarefree decomposition of a monic polynomial over Q.
std::vector<std::pair<Poly<Rational>, int>> squarefree(const Poly<Rational>& f) {
  std::vector<std::pair<Poly<Rational>, int>> out;
  Poly<Rational> df = derivative(f);
  Poly<Rational> a0 = gcd(f, df);
  Poly<Rational> b = divexact(f, a0);
  Poly<Rational> c = divexact(df, a0);
  Poly<Rational> d = c - derivative(b);
  int i = 1;
  while (b.degree() > 0) {
    Poly<Rational> a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    b = divexact(b, a);
    c = divexact(d, a);
    d = c - derivative(b);
    ++i;
  }
  return out;
}

bool poly_less(const Poly<Rational>& a, const Poly<Rational>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

// ---- integers --------------------------------------------------------------

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  gmp_randclass rnd(gmp_randinit_default);
  rnd.seed(0xC1EA9);
  while (true) {
    Integer y = rnd.get_z_range(n - 1) + 1;
    Integer c = rnd.get_z_range(n - 1) + 1;
    const std::size_t m = 128;
    Integer g = 1, r = 1, q = 1, x, ys;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) step(y);
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::size_t i = 0; i < m && k + i < r; ++i) {
          step(y);
          q = q * abs(x - y);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        step(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    primes.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    factor_rec(r, primes);
    factor_rec(r, primes);
    return;
  }
  Integer d = pollard_brent(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

Integer cubic_value(const Integer& x, const Integer& a, const Integer& c) { return x * x * x + a * x + c; }

// Integer root in [lo, hi] of a monotone cubic, if any.
void bisect(Integer lo, Integer hi, const Integer& a, const Integer& c, std::vector<Integer>& out) {
  if (lo > hi) return;
  const int slo = sgn(cubic_value(lo, a, c));
  const int shi = sgn(cubic_value(hi, a, c));
  if (slo == 0) {
    out.push_back(lo);
    return;
  }
  if (shi == 0) {
    out.push_back(hi);
    return;
  }
  if (slo == shi) return;
  while (hi - lo > 1) {
    Integer mid = lo + (hi - lo) / 2;
    const int sm = sgn(cubic_value(mid, a, c));
    if (sm == 0) {
      out.push_back(mid);
      return;
    }
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

}  // namespace

Factorization factor(const Poly<Rational>& p) {
  if (p.is_zero()) throw DegreeError("factorization of the zero polynomial");
  Factorization out;
  out.constant = p.lead();
  if (p.degree() == 0) return out;
  const Var v = p.var();
  for (const auto& [part, mult] : squarefree(monic(p))) {
    ZPoly z = intpoly::from_rational(part);
    if (z[0] == 0) {
      out.factors.emplace_back(Poly<Rational>::variable(v), mult);
      ZPoly shifted(z.begin() + 1, z.end());
      z = std::move(shifted);
    }
    if (intpoly::degree(z) < 1) continue;
    for (const auto& g : zassenhaus(z)) out.factors.emplace_back(monic(intpoly::to_rational(g, v)), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

Poly<Rational> expand(const Factorization& f) {
  Var v = f.factors.empty() ? Var::X : f.factors.front().first.var();
  Poly<Rational> acc(f.constant, v);
  for (const auto& [g, m] : f.factors) acc = acc * power(g, static_cast<unsigned>(m));
  return acc;
}

bool is_irreducible(const Poly<Rational>& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  Factorization f = factor(p);
  return f.factors.size() == 1 && f.factors.front().second == 1;
}

std::vector<Rational> rational_roots(const Poly<Rational>& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  for (const auto& [g, m] : factor(p).factors) {
    if (g.degree() == 1) roots.push_back(-g.coeff(0));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  if (n == 0) throw DivisionByZero("factorization of zero");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long q = 2; q < 10000 && q * q <= m; q += (q == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      primes.emplace_back(q);
      m /= q;
    }
  }
  factor_rec(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, int>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1);
    }
  }
  return out;
}

std::vector<Integer> integer_roots_depressed_cubic(const Integer& a, const Integer& c) {
  std::vector<Integer> out;
  const Integer bound = 1 + abs(a) + abs(c);
  if (a >= 0) {
    bisect(-bound, bound, a, c, out);
  } else {
    // Critical points at +-sqrt(-a/3); r = floor of that.
    Integer q = (-a) / 3, r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    bisect(-bound, -r - 1, a, c, out);
    bisect(-r, r, a, c, out);
    bisect(r + 1, bound, a, c, out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cleanpair
