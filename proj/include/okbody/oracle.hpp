// Independent ground truth by brute-force section enumeration on projective
// 3-space and its blow-ups at one or two coordinate points.  Multiplicity and
// flag conditions reduce to exponent inequalities on monomials, so valuation
// images and section counts are exact.
#pragma once

#include <array>

#include "okbody/hull.hpp"

namespace okb {

enum class OracleKind { p3, blowup1, blowup2 };

// Class alpha*H - beta1*E1 - beta2*E2 (pullback hyperplane basis); beta terms
// are ignored when the corresponding point is not blown up.
struct OracleClass {
  long alpha = 0;
  long beta1 = 0;
  long beta2 = 0;
};

struct ValuationSet {
  long m = 0;
  std::vector<std::array<long, 3>> vectors;  // sorted, distinct
  long h0 = 0;  // independent inclusion-exclusion count; equals vectors.size()
};

// Valuation triple of the monomial x0^k0 x1^k1 x2^k2 x3^k3 as a section of a
// bundle requiring multiplicity c1 at the first center: (mult_p1 - c1, k1, k3).
std::array<long, 3> monomial_valuation(long k0, long k1, long k2, long k3,
                                       long c1);

// Image of the valuation over H^0(m*D); throws ModelError on invalid input.
ValuationSet enumerate_valuations(OracleKind kind, const OracleClass& D, long m);

// Convex hull of the union of (1/m)-scaled valuation images for m <= m_max.
Polytope3 oracle_hull(OracleKind kind, const OracleClass& D, long m_max);

}  // namespace okb
