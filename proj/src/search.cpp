#include "cleanpair/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "cleanpair/factor.hpp"

namespace cleanpair {

Integer SearchRecord::a() const { return -3 * p * p * q * q; }
Integer SearchRecord::b() const { return 2 * p * p * p * q * q * q + 9 * p * p * q * q * q * q; }
CurveQ SearchRecord::curve() const { return CurveQ(Rational(a()), Rational(b())); }
PointQ SearchRecord::point() const { return PointQ(Rational(Integer(-2 * p * q)), Rational(Integer(-3 * p * q * q))); }

Integer s1_height(const Integer& p, const Integer& q) {
  const Integer a = 3 * p * p * q * q;
  const Integer b = 2 * p * p * p * q * q * q + 9 * p * p * q * q * q * q;
  const Integer a3 = a * a * a, b2 = b * b;
  return a3 > b2 ? a3 : b2;
}

std::string EnumerationConvention::name() const {
  std::string n = positive_only ? "positive" : "both-signs";
  n += include_nonreduced ? "+nonreduced" : "+reduced";
  return n;
}

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CLEANPAIR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

namespace {

SearchRecord make_record(long p, long q) {
  SearchRecord r;
  r.p = p;
  r.q = q;
  r.height = s1_height(r.p, r.q);
  r.disc_ok = r.b() * r.b() * 27 + 4 * r.a() * r.a() * r.a() != 0;
  if (r.disc_ok) r.nontorsion_ok = !is_torsion_overQ(r.curve(), r.point()).torsion;
  return r;
}

bool record_less(const SearchRecord& x, const SearchRecord& y) {
  if (x.height != y.height) return x.height < y.height;
  if (x.p != y.p) return x.p < y.p;
  return x.q < y.q;
}

long isqrt_floor(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<SearchRecord> enumerate_s1(long H, EnumerationConvention conv, unsigned threads) {
  if (H < 1) throw std::invalid_argument("H must be positive");
  if (threads == 0) threads = thread_budget();
  const Integer bound = [&] {
    Integer h = H;
    return Integer(h * h * h * h * h * h);
  }();
  // (3p^2q^2)^3 <= H^6 forces 3p^2q^2 <= H^2.
  const long h2 = H * H;
  std::vector<long> qs;
  for (long q = 1; 3 * q * q <= h2 || q == 1; ++q) qs.push_back(q);

  std::vector<std::vector<SearchRecord>> parts(threads);
  auto work = [&](unsigned id) {
    for (std::size_t i = id; i < qs.size(); i += threads) {
      const long q = qs[i];
      const long pmax = isqrt_floor(h2 / (3 * q * q));
      for (long p = conv.positive_only ? 1 : -pmax; p <= pmax; ++p) {
        if (!conv.include_nonreduced && std::gcd(p, q) != 1) continue;
        if (p == 0 && q != 1) continue;
        if (s1_height(p, q) > bound) continue;
        parts[id].push_back(make_record(p, q));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& t : pool) t.join();

  std::vector<SearchRecord> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<SweepRow> convention_sweep(long H, unsigned threads) {
  std::vector<SweepRow> rows;
  for (bool positive : {false, true}) {
    for (bool nonreduced : {false, true}) {
      SweepRow row;
      row.convention = {positive, nonreduced};
      const auto recs = enumerate_s1(H, row.convention, threads);
      row.records = recs.size();
      row.candidates = static_cast<std::size_t>(std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.candidate(); }));
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

Integer parse_integer(const std::string& s, std::size_t line, const char* what) {
  Integer v;
  const bool sign = !s.empty() && (s[0] == '-' || s[0] == '+');
  if (s.size() == (sign ? 1u : 0u) || !std::all_of(s.begin() + (sign ? 1 : 0), s.end(), ::isdigit) ||
      v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) {
    throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

int parse_small(const std::string& s, std::size_t line, const char* what) {
  const Integer v = parse_integer(s, line, what);
  if (!v.fits_sint_p()) throw ParseError(line, std::string(what) + " out of range");
  return static_cast<int>(v.get_si());
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string f; ss >> f;) out.push_back(f);
  return out;
}

}  // namespace

RankOracle parse_oracle(std::istream& in) {
  RankOracle oracle;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto f = fields(strip_comment(line));
    if (f.empty()) continue;
    if (f.size() != 3) throw ParseError(n, "expected 'p q rank', got " + std::to_string(f.size()) + " fields");
    const Integer p = parse_integer(f[0], n, "p"), q = parse_integer(f[1], n, "q");
    if (q == 0) throw ParseError(n, "q = 0");
    const int rank = parse_small(f[2], n, "rank");
    if (rank < 0) throw ParseError(n, "negative rank");
    const Rational t(p, q);
    const auto key = std::make_pair(t.num(), t.den());
    const auto [it, inserted] = oracle.emplace(key, rank);
    if (!inserted && it->second != rank) {
      throw ParseError(n, "conflicting rank for " + to_string(t) + ": " + std::to_string(it->second) + " vs " +
                              std::to_string(rank));
    }
  }
  return oracle;
}

RankOracle load_oracle(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_oracle(in);
}

void attach_ranks(std::vector<SearchRecord>& records, const RankOracle& oracle) {
  for (auto& r : records) {
    const Rational t(r.p, r.q);
    const auto it = oracle.find({t.num(), t.den()});
    r.rank = it == oracle.end() ? std::nullopt : std::optional<int>(it->second);
  }
}

PairingSummary pairing_summary(const std::vector<SearchRecord>& records) {
  PairingSummary s;
  for (const char* k : {"0", "1", "2", "3", ">=4", "?"}) s.buckets[k] = 0;
  for (const auto& r : records) {
    if (!r.candidate()) continue;
    ++s.candidates;
    if (!r.rank) {
      ++s.buckets["?"];
    } else if (*r.rank >= 4) {
      ++s.buckets[">=4"];
    } else {
      ++s.buckets[std::to_string(*r.rank)];
    }
  }
  const Integer n = static_cast<unsigned long>(s.buckets["1"]);
  s.ordered_with_self = n * n;
  s.ordered_pairs = n * n - n;
  s.unordered_pairs = s.ordered_pairs / 2;
  return s;
}

void write_csv(std::ostream& out, const std::vector<SearchRecord>& records) {
  out << "p,q,height,disc_ok,nontorsion_ok,rank\n";
  for (const auto& r : records) {
    out << r.p.get_str() << ',' << r.q.get_str() << ',' << r.height.get_str() << ',' << (r.disc_ok ? 1 : 0) << ','
        << (r.nontorsion_ok ? 1 : 0) << ',';
    if (r.rank) out << *r.rank;
    out << '\n';
  }
}

std::vector<SearchRecord> read_csv(std::istream& in) {
  std::vector<SearchRecord> out;
  std::string line;
  if (!std::getline(in, line) || line != "p,q,height,disc_ok,nontorsion_ok,rank") {
    throw ParseError(1, "missing CSV header");
  }
  auto flag = [](const std::string& s, std::size_t n) {
    if (s == "1") return true;
    if (s == "0") return false;
    throw ParseError(n, "bad flag '" + s + "'");
  };
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 6) throw ParseError(n, "expected 6 columns");
    SearchRecord r;
    r.p = parse_integer(f[0], n, "p");
    r.q = parse_integer(f[1], n, "q");
    r.height = parse_integer(f[2], n, "height");
    r.disc_ok = flag(f[3], n);
    r.nontorsion_ok = flag(f[4], n);
    if (!f[5].empty()) r.rank = parse_small(f[5], n, "rank");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CurveDbEntry> parse_db(std::istream& in) {
  std::vector<CurveDbEntry> out;
  std::map<std::string, std::size_t> seen;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto f = fields(strip_comment(line));
    if (f.empty()) continue;
    if (f.size() != 9) {
      throw ParseError(n, "expected 'label a1 a2 a3 a4 a6 rank torsionOrder conductor', got " +
                              std::to_string(f.size()) + " fields");
    }
    CurveDbEntry e;
    e.label = f[0];
    for (int i = 0; i < 5; ++i) e.a[static_cast<std::size_t>(i)] = parse_integer(f[static_cast<std::size_t>(i) + 1], n, "a-invariant");
    e.rank = parse_small(f[6], n, "rank");
    e.torsion_order = parse_small(f[7], n, "torsion order");
    e.conductor = parse_integer(f[8], n, "conductor");
    if (!seen.emplace(e.label, n).second) throw ParseError(n, "duplicate label '" + e.label + "'");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CurveDbEntry> load_db(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_db(in);
}

std::pair<Integer, Integer> short_model(const std::array<Integer, 5>& a) {
  const Integer &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  const Integer b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const Integer c4 = b2 * b2 - 24 * b4, c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  Integer A = -27 * c4, B = -54 * c6;
  Integer g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  if (g == 0) return {A, B};
  for (const auto& [l, e] : factor_integer(g)) {
    (void)e;
    const Integer l4 = l * l * l * l, l6 = l4 * l * l;
    while (A % l4 == 0 && B % l6 == 0) {
      A /= l4;
      B /= l6;
    }
  }
  return {A, B};
}

DbFilterReport filter_db_family_candidates(const std::vector<CurveDbEntry>& db) {
  DbFilterReport rep;
  for (const auto& e : db) {
    if (e.rank != 1) continue;
    ++rep.rank_one;
    const auto [A, B] = short_model(e.a);
    const auto t0 = exact_root(Rational(-A) / Rational(3), 2);
    if (!t0) continue;
    const CurveQ curve{Rational(A), Rational(B)};
    const std::vector<PointQ> tors = torsion_points_overQ(curve);

    std::vector<Rational> ts{*t0};
    if (!t0->is_zero()) ts.push_back(-*t0);
    std::optional<DbCandidate> best;
    int best_score = -1;
    for (const auto& t : ts) {
      DbCandidate c{e.label, A, B, t, exact_root(Rational(B) - Rational(2) * t * t * t, 2), false};
      c.torsion_at_t = std::any_of(tors.begin(), tors.end(),
                                   [&](const PointQ& p) { return !p.is_identity() && p.x() == t; });
      const int score = (c.torsion_at_t ? 0 : 2) + (c.r ? 1 : 0);
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    rep.shape.push_back(*best);
    if (best->torsion_at_t) {
      rep.excluded_torsion.push_back(e.label);
      continue;
    }
    rep.eligible.push_back(e.label);
    if (best->r) rep.square.push_back(e.label);
  }
  const Integer n = static_cast<unsigned long>(rep.square.size());
  rep.square_pairs_with_self = n * n;
  rep.square_pairs_ordered = n * n - n;
  rep.square_pairs_unordered = rep.square_pairs_ordered / 2;
  return rep;
}

}  // namespace cleanpair
