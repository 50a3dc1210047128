#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cleanpair/family.hpp"

namespace cleanpair {

using PolyQ = Poly<Rational>;
using RatQ = RatFunc<Rational>;
// Polynomial in x1 whose coefficients are polynomials in x2.
using BiPoly = Poly<PolyQ>;

// C_r : f(x1) = r^2 g(x2), stored as F = f(x1) - r^2 g(x2).
struct PencilFiber {
  Rational r;
  CurveQ left;   // y1^2 = f(x1)
  CurveQ right;  // y2^2 = g(x2)
  BiPoly F;
};

enum class NodeKind { Node, Cusp };

struct NodeData {
  Rational t1;
  Rational t2;
  Rational hessian_det;
  NodeKind kind = NodeKind::Node;
};

// Lines x1 = t1 + lambda*tau, x2 = t2 + tau through the node:
// F = q2(lambda) tau^2 + q3(lambda) tau^3.
struct NodalParametrization {
  PolyQ q2;  // node branches
  PolyQ q3;  // branches at infinity, all over pi(O1, O2)
  RatQ tau;
  RatQ x1;
  RatQ x2;
};

// h = (lambda - lambda_P)^m / N, with N = monic q3 (m = 3) or the linear
// factor of a rational root of q3 (m = 1).
struct DivisorWitness {
  Rational target_x1;
  Rational target_x2;
  Rational lambda_p;
  int m = 3;
  RatQ h;
};

struct FiberRecord {
  PencilFiber fiber;
  NodeData node;
  NodalParametrization par;
  DivisorWitness witness;
};

struct PreimageEntry {
  int sign1 = 1;  // the point (sign1 * P1, sign2 * P2)
  int sign2 = 1;
  Rational ratio;  // y1/y2 at that point
  bool on_plus = true;
};

struct Conclusion {
  int multiplier = 3;
  std::string statement;
  std::string conditional;
  bool clean_asserted = false;  // both rank-1 flags supplied
};

struct CleanPairCertificate {
  PairHypothesis pair;
  Rational r;
  FiberRecord plus;
  FiberRecord minus;
  std::vector<PreimageEntry> preimages;
  Conclusion conclusion;
};

PencilFiber fiber_at(const CurveQ& e1, const CurveQ& e2, const Rational& r);
// r = y1(P1)/y2(P2).
std::pair<Rational, PencilFiber> build_fiber(const CurveQ& e1, const CurveQ& e2, const PointQ& p1, const PointQ& p2);

Rational evaluate_fiber(const PencilFiber& fb, const Rational& x1, const Rational& x2);

NodeData find_node(const PencilFiber& fb, const Rational& t1, const Rational& t2);
NodalParametrization parametrize(const PencilFiber& fb, const NodeData& node);
DivisorWitness divisor_witness(const NodalParametrization& par, const NodeData& node, const Rational& x1,
                               const Rational& x2);

std::vector<PreimageEntry> preimage_table(const Rational& r, const PointQ& p1, const PointQ& p2);

CleanPairCertificate assemble_certificate(const PairHypothesis& pair);

struct VerificationReason {
  std::string code;  // MembershipMismatch, RatioMismatch, FiberMismatch, NodeMismatch,
                     // ParametrizationMismatch, DivisorMismatch, PreimageMismatch,
                     // ConclusionMismatch, CanonicalMismatch
  std::string detail;
};

struct Verification {
  bool ok = false;
  std::vector<VerificationReason> reasons;
};

Verification verify_certificate(const CleanPairCertificate& cert);

const char* node_kind_name(NodeKind k);

}  // namespace cleanpair
