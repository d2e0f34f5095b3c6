// Rational polyhedral cones in small ambient dimension with both the
// generator (V) and facet (H) descriptions kept minimal and canonical.
//
// Conventions:
//   * a facet vector f encodes the inequality  f . x >= 0;
//   * generators are primitive integer vectors, lexicographically sorted;
//   * lineality shows up as opposite generator pairs (v, -v) and implicit
//     equalities show up as opposite facet pairs.
#pragma once

#include <optional>

#include "okbody/linalg.hpp"

namespace okb {

class PolyhedralCone {
 public:
  PolyhedralCone() = default;

  static PolyhedralCone from_generators(std::size_t dim,
                                        const std::vector<QVec>& gens);
  static PolyhedralCone from_facets(std::size_t dim,
                                    const std::vector<QVec>& facets);

  std::size_t dim() const { return dim_; }
  const std::vector<QVec>& generators() const { return generators_; }
  const std::vector<QVec>& facets() const { return facets_; }

  bool contains(const QVec& x) const;
  // Strict membership in the topological interior (false for cones that are
  // not full-dimensional).
  bool contains_interior(const QVec& x) const;
  bool is_full_dim() const;

  // Largest s >= 0 with base + s*dir still in the cone; nullopt means the ray
  // never leaves.  Throws std::domain_error when base is outside the cone.
  std::optional<Rational> ray_exit(const QVec& base, const QVec& dir) const;

  friend bool operator==(const PolyhedralCone&, const PolyhedralCone&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<QVec> generators_;
  std::vector<QVec> facets_;
};

}  // namespace okb
