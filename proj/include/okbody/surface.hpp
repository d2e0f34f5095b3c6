// Surface-level machinery: Zariski decompositions with respect to a fixed
// list of negative curves, asymptotic valuations, and Okounkov polygons of a
// (possibly merely pseudo-effective) divisor class with respect to a flag
// (curve, point).
#pragma once

#include <map>
#include <string>

#include "okbody/cone.hpp"
#include "okbody/errors.hpp"
#include "okbody/hull.hpp"
#include "okbody/piecewise.hpp"

namespace okb {

struct SurfaceModel {
  std::string name;
  std::size_t rank = 0;
  std::vector<std::string> basis_labels;
  QMat intersection_form;  // rank x rank, symmetric
  std::vector<std::string> negative_curve_labels;
  std::vector<QVec> negative_curves;  // classes, aligned with the labels
  PolyhedralCone eff_cone;
  PolyhedralCone nef_cone;

  Rational pair(const QVec& a, const QVec& b) const {
    return dot(a, mat_vec(intersection_form, b));
  }

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

// Admissible flag on the surface: an irreducible curve C (by class, plus its
// self-intersection which the class already determines) and a point x on C,
// recorded through the local multiplicities ord_x(C_i|_C) of each negative
// curve at x (absent entries mean the curve misses x).
struct SurfaceFlag {
  QVec curve_class;
  std::map<std::string, Rational> point_data;

  friend bool operator==(const SurfaceFlag&, const SurfaceFlag&) = default;
};

struct ZariskiDecomposition {
  QVec positive;
  QVec negative;
  std::vector<std::string> support;        // labels, in model order
  std::map<std::string, Rational> coeffs;  // positive coefficients of N
};

// Throws ModelError when the model data is internally inconsistent.
void validate_surface_model(const SurfaceModel& m);

// Fujita-Zariski decomposition D = P + N; requires D pseudo-effective.
ZariskiDecomposition zariski_decompose(const SurfaceModel& m, const QVec& D);

// ord_C(||D||): the coefficient of the given curve class in N(D); zero when
// the class is not among the model's negative curves.
Rational asymptotic_valuation_surface(const SurfaceModel& m, const QVec& D,
                                      const QVec& curve_class);

// sup { t >= 0 : D - tC pseudo-effective }.
Rational mu_surface(const SurfaceModel& m, const QVec& D, const QVec& C);

// All t in [t0, t1] where the negative-part support of D - tC changes,
// endpoints included, strictly increasing.
QVec negative_part_breakpoints(const SurfaceModel& m, const QVec& D,
                               const QVec& C, const Rational& t0,
                               const Rational& t1);

struct SurfacePolygon {
  Polygon2 polygon;       // canonical vertex cycle in the (t, y)-plane
  Rational ord, mu;
  PiecewiseLinear alpha;  // lower boundary on [ord, mu]
  PiecewiseLinear beta;   // upper boundary on [ord, mu]
  std::vector<std::vector<std::string>> supports;  // negative support per piece
  bool limiting = false;  // true when D was pseudo-effective but not big
};

SurfacePolygon okounkov_polygon(const SurfaceModel& m, const SurfaceFlag& flag,
                                const QVec& D, bool allow_limiting);

// Okounkov body of a degree-d divisor on a curve: the interval [0, d].
std::pair<Rational, Rational> okounkov_curve(const Rational& d);

// t-values in [lo, hi] where the Zariski chamber structure of the two-parameter
// family A0 + t*A1 - x2*C can change (conservative superset).  Used to refine
// threefold slice breakpoints exactly.
QVec surface_family_breakpoints(const SurfaceModel& m, const QVec& C,
                                const QVec& A0, const QVec& A1,
                                const Rational& lo, const Rational& hi);

}  // namespace okb
