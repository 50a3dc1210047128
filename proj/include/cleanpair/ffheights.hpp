#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cleanpair/curve.hpp"
#include "cleanpair/place.hpp"
#include "cleanpair/quadext.hpp"
#include "json.hpp"

namespace cleanpair {

using PolyT = Poly<Rational>;
using RatT = RatFunc<Rational>;
using QRatT = RatFunc<QuadExt>;
using FFPoint = CurvePoint<QRatT>;

// y^2 = x^3 + a x + b over Q(T), kept as two integral models: the given one
// in T and the one in T' = 1/T obtained from
// (x, y, T) = (x'/T'^(2k), y'/T'^(3k), 1/T'), k minimal.
class FunctionFieldCurve {
 public:
  // Denominators in a, b are cleared by x -> D^2 x, y -> D^3 y; points given
  // on the input curve go through import_point().
  FunctionFieldCurve(const RatT& a, const RatT& b);

  const PolyT& a() const { return a_; }
  const PolyT& b() const { return b_; }
  const PolyT& a_inf() const { return a_inf_; }
  const PolyT& b_inf() const { return b_inf_; }
  int infinity_twist() const { return k_; }
  PolyT discriminant() const;
  PolyT discriminant_at_infinity() const;

  // Finite model, over Q(sqrt d)(T) so that points like (T, l*sqrt s) fit.
  const WeierstrassCurve<QRatT>& group() const { return group_; }
  FFPoint import_point(const FFPoint& p) const;
  // Coordinates of a finite-model point on the T' model.
  FFPoint at_infinity(const FFPoint& p) const;

 private:
  PolyT a_, b_, a_inf_, b_inf_;
  RatT scale_;
  int k_ = 0;
  WeierstrassCurve<QRatT> group_;
};

enum class ReductionType { Good, Multiplicative, Additive };

struct ReductionProfile {
  Place place = Place::infinity();
  int val_delta = 0;
  ReductionType type = ReductionType::Good;
  int components = 1;  // m_t
  int geometric_multiplicity = 1;
  std::string reduction;  // reduced equation
};

// Factors the discriminant of both models; throws MinimalityError when
// val(Delta) >= 12 and val(c4) >= 4 at some place.
std::vector<ReductionProfile> bad_places(const FunctionFieldCurve& e);

// 8 - sum(val Delta) + #R + #R_a over geometric places; throws
// NotRationalSurface unless sum(val Delta) = 12.
int shioda_tate_rank(const std::vector<ReductionProfile>& profiles);

struct PlaceHeight {
  Place place = Place::infinity();
  int val_delta = 0;
  ReductionType type = ReductionType::Good;
  bool smooth = true;
  int val_x = 0;
  int val_F2 = 0;  // of (2y)^2
  int val_F3 = 0;  // of (3x^4 + 6ax^2 + 12bx - a^2)^2
  Rational lambda;
};

struct HeightReport {
  std::vector<PlaceHeight> per_place;  // contributing places, in place order
  Rational total;                      // degree-weighted sum
};

PlaceHeight local_height_record(const FunctionFieldCurve& e, const FFPoint& p, const Place& v);
Rational local_height(const FunctionFieldCurve& e, const FFPoint& p, const Place& v);
HeightReport canonical_height(const FunctionFieldCurve& e, const FFPoint& p);
Rational height_pairing(const FunctionFieldCurve& e, const FFPoint& p, const FFPoint& q);

RatT j_invariant_ff(const FunctionFieldCurve& e);

// The s-specialization y^2 = x^3 - 3T^2 x + 2T^3 + (1-s-3T)^2 s and its
// points P = (1-s-2T, 1-s-3T), Q = (T, (1-s-3T) sqrt s).
FunctionFieldCurve family_surface(const Rational& s);
FFPoint family_P(const Rational& s);
FFPoint family_Q(const Rational& s);
// Coefficientwise sqrt(d) -> -sqrt(d).
FFPoint galois_conjugate(const FFPoint& p);

struct RankEvidence {
  int shioda_tate_bound = 0;
  std::vector<std::pair<std::string, Rational>> heights;
  std::vector<std::vector<Rational>> gram;
  std::optional<bool> p_is_minus_2q;     // s = 1
  std::optional<bool> galois_negates_q;  // s not a square
  std::optional<bool> galois_fixes_p;
  std::vector<std::string> notes;
};

struct GenericRank {
  int rank = 0;
  RankEvidence evidence;
};

GenericRank generic_rank(const Rational& s);

const char* reduction_type_name(ReductionType t);

// Reproduction of the reduction and local height table for a given s.
nlohmann::ordered_json heights_json(const Rational& s);
std::string heights_markdown(const Rational& s);
nlohmann::ordered_json rank_json(const Rational& s);

}  // namespace cleanpair
