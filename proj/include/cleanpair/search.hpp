#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cleanpair/curve.hpp"

namespace cleanpair {

// One t = p/q of the s = 1 slice, on the integral model
// y^2 = (x - pq)^2 (x + 2pq) + 9 p^2 q^4 with point (-2pq, -3pq^2).
struct SearchRecord {
  Integer p;
  Integer q;
  Integer height;  // max{(3p^2q^2)^3, (2p^3q^3 + 9p^2q^4)^2}
  bool disc_ok = false;
  bool nontorsion_ok = false;
  std::optional<int> rank;

  bool candidate() const { return disc_ok && nontorsion_ok; }
  Integer a() const;
  Integer b() const;
  CurveQ curve() const;  // requires disc_ok
  PointQ point() const;

  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

Integer s1_height(const Integer& p, const Integer& q);

struct EnumerationConvention {
  bool positive_only = false;       // p > 0 only
  bool include_nonreduced = false;  // every p/q, not only gcd(p, q) = 1
  std::string name() const;
};

// Thread count from CLEANPAIR_THREADS (default: hardware concurrency).
unsigned thread_budget();

// All t with h(t) <= H^6, ordered by height, then p, then q. Output does not
// depend on the thread count.
std::vector<SearchRecord> enumerate_s1(long H, EnumerationConvention conv = {}, unsigned threads = 0);

struct SweepRow {
  EnumerationConvention convention;
  std::size_t records = 0;
  std::size_t candidates = 0;
};
std::vector<SweepRow> convention_sweep(long H, unsigned threads = 0);

// "p q rank" lines, '#' comments; keyed by the reduced fraction p/q.
using RankOracle = std::map<std::pair<Integer, Integer>, int>;
RankOracle parse_oracle(std::istream& in);
RankOracle load_oracle(const std::string& path);
void attach_ranks(std::vector<SearchRecord>& records, const RankOracle& oracle);

struct PairingSummary {
  std::size_t candidates = 0;
  std::map<std::string, std::size_t> buckets;  // "0", "1", "2", "3", ">=4", "?"
  Integer unordered_pairs;                     // C(n, 2) over the rank-1 bucket
  Integer ordered_pairs;                       // n^2 - n
  Integer ordered_with_self;                   // n^2
};
PairingSummary pairing_summary(const std::vector<SearchRecord>& records);

// Header p,q,height,disc_ok,nontorsion_ok,rank; an unknown rank is empty.
void write_csv(std::ostream& out, const std::vector<SearchRecord>& records);
std::vector<SearchRecord> read_csv(std::istream& in);

struct CurveDbEntry {
  std::string label;
  std::array<Integer, 5> a;  // a1 a2 a3 a4 a6
  int rank = 0;
  int torsion_order = 0;
  Integer conductor;
};

// "label a1 a2 a3 a4 a6 rank torsionOrder conductor" lines, '#' comments.
std::vector<CurveDbEntry> parse_db(std::istream& in);
std::vector<CurveDbEntry> load_db(const std::string& path);

// y^2 = x^3 - 27c4 x - 54c6, then divided by the largest u^4, u^6.
std::pair<Integer, Integer> short_model(const std::array<Integer, 5>& a);

struct DbCandidate {
  std::string label;
  Integer A;
  Integer B;
  Rational t;                  // a t with A = -3t^2 that passed, or the positive root
  std::optional<Rational> r;   // b - 2t^3 = r^2
  bool torsion_at_t = false;
};

struct DbFilterReport {
  std::size_t rank_one = 0;
  std::vector<DbCandidate> shape;              // A = -3t^2
  std::vector<std::string> eligible;           // no torsion point with x = t
  std::vector<std::string> excluded_torsion;   // b - 2t^3 = r^2 with (t, r) torsion
  std::vector<std::string> square;             // eligible and b - 2t^3 a square: s = 1 works
  Integer square_pairs_unordered;
  Integer square_pairs_ordered;
  Integer square_pairs_with_self;
};

// A curve is eligible when some sign of t leaves no torsion point with
// x-coordinate t.
DbFilterReport filter_db_family_candidates(const std::vector<CurveDbEntry>& db);

}  // namespace cleanpair
