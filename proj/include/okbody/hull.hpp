// Exact convex hulls, volumes and axis-aligned sections in dimensions 2 and 3.
// Degenerate hulls (points, segments, planar polytopes) are first-class: the
// affine dimension is tracked and all operations stay exact.
#pragma once

#include "okbody/linalg.hpp"

namespace okb {

// Convex polygon in the plane.  Vertices are stored as a canonical cycle:
// counterclockwise, starting from the lexicographically smallest vertex.
// affine_dim is 0 (point), 1 (segment) or 2; -1 marks the empty polygon.
struct Polygon2 {
  std::vector<QVec> vertices;
  int affine_dim = -1;

  bool empty() const { return affine_dim < 0; }
  Rational area() const;
  bool contains(const QVec& p) const;

  friend bool operator==(const Polygon2&, const Polygon2&) = default;
};

Polygon2 convex_hull_2d(const std::vector<QVec>& points);
Polygon2 translate(const Polygon2& p, const QVec& v);

// Convex polytope in R^3.  For affine_dim == 3 the facet list holds outward
// inequalities n.x <= c; for affine_dim == 2 the vertices form a planar cycle
// (counterclockwise in the plane's induced orientation) and facets are empty;
// for affine_dim <= 1 only the vertex list is meaningful.
struct Polytope3 {
  std::vector<QVec> vertices;                    // canonical (see note above)
  std::vector<std::pair<QVec, Rational>> facets; // n.x <= c, primitive n, sorted
  int affine_dim = -1;

  bool empty() const { return affine_dim < 0; }
  Rational volume() const;
  bool contains(const QVec& p) const;

  friend bool operator==(const Polytope3&, const Polytope3&) = default;
};

Polytope3 convex_hull_3d(const std::vector<QVec>& points);
Polytope3 translate(const Polytope3& p, const QVec& v);

// Cross-section {x1 = t} of a polytope, reported as a polygon in (x2, x3).
Polygon2 polytope_section(const Polytope3& p, const Rational& t);

// Drops points lying inside (or on the boundary of) the hull; used to keep
// incremental hull unions small.
std::vector<QVec> filter_outside(const Polytope3& hull,
                                 const std::vector<QVec>& points);

// Vertex cycles of each facet of a full-dimensional polytope, ordered
// counterclockwise when viewed from outside; used for mesh export.
std::vector<std::vector<std::size_t>> facet_cycles(const Polytope3& p);

}  // namespace okb
