#include "okbody/oracle.hpp"

#include <algorithm>
#include <set>

#include "okbody/errors.hpp"

namespace okb {

namespace {

long choose3(long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
long choose2(long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Independent section count: degree-n monomials in 4 variables minus those
// violating mult_p1 >= c1 or mult_p2 >= c2, by inclusion-exclusion.
long section_count(long n, long c1, long c2) {
  if (n < 0) return 0;
  long total = choose3(n + 3);
  long b1 = 0, b2 = 0, b12 = 0;
  if (c1 > 0)  // mult_p1 = k1+k2+k3 = s <= c1-1; C(s+2,2) monomials per s
    for (long s = 0; s <= std::min(c1 - 1, n); ++s) b1 += choose2(s + 2);
  if (c2 > 0)
    for (long s = 0; s <= std::min(c2 - 1, n); ++s) b2 += choose2(s + 2);
  if (c1 > 0 && c2 > 0) {
    // Violating both: k1+k2+k3 = s <= c1-1 and k0+k2+k3 <= c2-1, i.e. the
    // weight w = k2+k3 satisfies w <= c2-1-n+s; k1 = s-w, w+1 choices of k2.
    for (long s = 0; s <= std::min(c1 - 1, n); ++s) {
      long wmax = std::min(c2 - 1 - n + s, s);
      for (long w = 0; w <= wmax; ++w) b12 += w + 1;
    }
  }
  return total - b1 - b2 + b12;
}

}  // namespace

std::array<long, 3> monomial_valuation(long k0, long k1, long k2, long k3,
                                       long c1) {
  (void)k0;
  // Dehomogenize at p1 = [1:0:0:0]: the monomial becomes u1^k1 u2^k2 u3^k3.
  // nu1 = order along E1 after twisting, nu2 = order along the curve u1 = 0 in
  // E1, nu3 = order at the point (u2:u3) = (1:0), i.e. the u3-exponent.
  return {k1 + k2 + k3 - c1, k1, k3};
}

ValuationSet enumerate_valuations(OracleKind kind, const OracleClass& D,
                                  long m) {
  if (m <= 0) throw ModelError("enumerate_valuations: m must be positive");
  if (D.alpha < 0)
    throw ModelError("enumerate_valuations: alpha must be non-negative");
  long n = m * D.alpha;
  long c1 = kind == OracleKind::p3 ? 0 : m * D.beta1;
  long c2 = kind == OracleKind::blowup2 ? m * D.beta2 : 0;
  ValuationSet vs;
  vs.m = m;
  std::set<std::array<long, 3>> triples;
  long count = 0;
  for (long k1 = 0; k1 <= n; ++k1)
    for (long k2 = 0; k1 + k2 <= n; ++k2)
      for (long k3 = 0; k1 + k2 + k3 <= n; ++k3) {
        long k0 = n - k1 - k2 - k3;
        if (c1 > 0 && k1 + k2 + k3 < c1) continue;
        if (c2 > 0 && k0 + k2 + k3 < c2) continue;
        ++count;
        triples.insert(monomial_valuation(k0, k1, k2, k3,
                                          kind == OracleKind::p3 ? 0 : c1));
      }
  vs.vectors.assign(triples.begin(), triples.end());
  vs.h0 = section_count(n, c1 > 0 ? c1 : 0, c2 > 0 ? c2 : 0);
  if (vs.h0 != count || vs.h0 != static_cast<long>(vs.vectors.size()))
    throw ModelError("enumerate_valuations: section-count audit failed "
                     "(enumeration does not match inclusion-exclusion)");
  return vs;
}

Polytope3 oracle_hull(OracleKind kind, const OracleClass& D, long m_max) {
  if (m_max < 1) throw ModelError("oracle_hull: m_max must be >= 1");
  std::vector<QVec> active;
  Polytope3 hull;
  for (long m = 1; m <= m_max; ++m) {
    ValuationSet vs = enumerate_valuations(kind, D, m);
    std::vector<QVec> pts;
    for (const auto& v : vs.vectors)
      pts.push_back({Rational(v[0], m), Rational(v[1], m), Rational(v[2], m)});
    if (m > 1 && !hull.empty()) pts = filter_outside(hull, pts);
    if (pts.empty() && m > 1) continue;
    for (const auto& v : hull.vertices) pts.push_back(v);
    for (const auto& v : active) pts.push_back(v);
    hull = convex_hull_3d(pts);
    active = hull.vertices;
  }
  return hull;
}

}  // namespace okb
