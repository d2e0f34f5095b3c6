#include "okbody/hull.hpp"

#include <algorithm>
#include <map>

namespace okb {

namespace {

Rational cross2(const QVec& o, const QVec& a, const QVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

QVec cross3(const QVec& a, const QVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Rational det3(const QVec& a, const QVec& b, const QVec& c) {
  return dot(a, cross3(b, c));
}

std::vector<QVec> dedupe_sorted(std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Exact counterclockwise angular order around a center point; ties broken so
// the result is deterministic (collinear-with-center duplicates cannot occur
// for polygon vertices).
struct AngleLess {
  QVec center;
  bool operator()(const QVec& p, const QVec& q) const {
    QVec a = vsub(p, center), b = vsub(q, center);
    auto half = [](const QVec& v) {
      // 0: positive x-axis and upper half; 1: negative x-axis and lower half
      if (v[1].sign() > 0) return 0;
      if (v[1].sign() < 0) return 1;
      return v[0].sign() >= 0 ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rational cr = a[0] * b[1] - a[1] * b[0];
    if (!cr.is_zero()) return cr.sign() > 0;
    return lex_less(p, q);
  }
};

}  // namespace

Polygon2 convex_hull_2d(const std::vector<QVec>& points) {
  for (const auto& p : points)
    if (p.size() != 2) throw std::invalid_argument("convex_hull_2d: need 2d points");
  std::vector<QVec> pts = dedupe_sorted(points);
  Polygon2 poly;
  if (pts.empty()) return poly;
  if (pts.size() == 1) {
    poly.vertices = pts;
    poly.affine_dim = 0;
    return poly;
  }
  bool collinear = true;
  for (std::size_t i = 2; i < pts.size() && collinear; ++i)
    collinear = cross2(pts[0], pts[1], pts[i]).is_zero();
  if (collinear) {
    poly.vertices = {pts.front(), pts.back()};
    poly.affine_dim = 1;
    return poly;
  }
  // Andrew's monotone chain; collinear points along edges are dropped so the
  // vertex list is minimal.
  std::vector<QVec> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p).sign() <= 0) --k;
    h[k++] = p;
  }
  std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], *it).sign() <= 0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  poly.vertices = h;  // counterclockwise, starting at the lex-min point
  poly.affine_dim = 2;
  return poly;
}

Rational Polygon2::area() const {
  if (affine_dim < 2) return 0;
  Rational s;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const QVec& a = vertices[i];
    const QVec& b = vertices[(i + 1) % vertices.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s / 2;
}

bool Polygon2::contains(const QVec& p) const {
  if (empty()) return false;
  if (affine_dim == 0) return p == vertices[0];
  if (affine_dim == 1) {
    const QVec& a = vertices[0];
    const QVec& b = vertices[1];
    if (!cross2(a, b, p).is_zero()) return false;
    // On the line: check the parameter range via lexicographic betweenness.
    return !lex_less(p, a) && !lex_less(b, p);
  }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (cross2(vertices[i], vertices[(i + 1) % vertices.size()], p).sign() < 0)
      return false;
  return true;
}

Polygon2 translate(const Polygon2& p, const QVec& v) {
  Polygon2 r = p;
  for (auto& w : r.vertices) w = vadd(w, v);
  return r;
}

Polytope3 convex_hull_3d(const std::vector<QVec>& points) {
  for (const auto& p : points)
    if (p.size() != 3) throw std::invalid_argument("convex_hull_3d: need 3d points");
  std::vector<QVec> pts = dedupe_sorted(points);
  Polytope3 poly;
  if (pts.empty()) return poly;
  // Affine dimension via the rank of difference vectors.
  std::vector<QVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i)
    diffs.push_back(vsub(pts[i], pts[0]));
  std::size_t ad = diffs.empty() ? 0 : rank(QMat::from_rows(diffs));
  poly.affine_dim = static_cast<int>(ad);
  if (ad == 0) {
    poly.vertices = {pts[0]};
    return poly;
  }
  if (ad == 1) {
    poly.vertices = {pts.front(), pts.back()};  // lex extremes are endpoints
    return poly;
  }
  if (ad == 2) {
    // Project onto two independent in-plane directions, hull in 2d, lift.
    QVec u1, u2;
    for (const auto& d : diffs) {
      if (u1.empty() && !is_zero_vec(d)) {
        u1 = d;
      } else if (!u1.empty() && !is_zero_vec(cross3(u1, d))) {
        u2 = d;
        break;
      }
    }
    std::map<std::pair<std::string, std::string>, QVec> back;
    std::vector<QVec> proj;
    for (const auto& p : pts) {
      QVec q = {dot(p, u1), dot(p, u2)};
      proj.push_back(q);
      back[{q[0].str(), q[1].str()}] = p;
    }
    Polygon2 flat = convex_hull_2d(proj);
    for (const auto& q : flat.vertices)
      poly.vertices.push_back(back.at({q[0].str(), q[1].str()}));
    if (flat.affine_dim < 2) {
      poly.affine_dim = flat.affine_dim;  // guards against rank overestimates
      return poly;
    }
    // Canonical cycle: counterclockwise about the canonical plane normal,
    // starting at the lexicographically smallest vertex.
    QVec n = primitive_signed(cross3(u1, u2));
    Rational orient;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
      const QVec& a = poly.vertices[i];
      const QVec& b = poly.vertices[(i + 1) % poly.vertices.size()];
      orient += dot(n, cross3(a, b));
    }
    if (orient.sign() < 0)
      std::reverse(poly.vertices.begin(), poly.vertices.end());
    auto mn = std::min_element(poly.vertices.begin(), poly.vertices.end(), lex_less);
    std::rotate(poly.vertices.begin(), mn, poly.vertices.end());
    return poly;
  }
  // Full-dimensional: enumerate supporting planes over point triples.  Input
  // sets here are small (hull unions are pre-filtered), so the cubic scan is
  // exact, simple and fast enough.
  std::map<QVec, std::pair<QVec, Rational>, bool (*)(const QVec&, const QVec&)>
      planes(lex_less);
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        QVec nor = cross3(vsub(pts[j], pts[i]), vsub(pts[k], pts[i]));
        if (is_zero_vec(nor)) continue;
        Rational c = dot(nor, pts[i]);
        bool above = false, below = false;
        for (const auto& p : pts) {
          int s = (dot(nor, p) - c).sign();
          if (s > 0) above = true;
          if (s < 0) below = true;
          if (above && below) break;
        }
        if (above && below) continue;
        if (above) {
          nor = vneg(nor);
          c = -c;
        }
        QVec key = primitive({nor[0], nor[1], nor[2], c});
        planes.emplace(key, std::make_pair(QVec{key[0], key[1], key[2]}, key[3]));
      }
  for (const auto& [key, f] : planes) poly.facets.push_back(f);
  // Vertices: points whose tight facet normals span all of R^3.
  for (const auto& p : pts) {
    std::vector<QVec> tight;
    for (const auto& [nor, c] : poly.facets)
      if (dot(nor, p) == c) tight.push_back(nor);
    if (tight.size() >= 3 && rank(QMat::from_rows(tight)) == 3)
      poly.vertices.push_back(p);
  }
  return poly;
}

std::vector<std::vector<std::size_t>> facet_cycles(const Polytope3& p) {
  if (p.affine_dim != 3)
    throw std::domain_error("facet_cycles: polytope is not full-dimensional");
  std::vector<std::vector<std::size_t>> cycles;
  for (const auto& [n, c] : p.facets) {
    std::vector<std::size_t> inc;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      if (dot(n, p.vertices[i]) == c) inc.push_back(i);
    // In-plane right-handed frame (u1, u2, n); counterclockwise order in this
    // frame is counterclockwise as seen from outside.
    const QVec& v0 = p.vertices[inc[0]];
    QVec u1;
    for (std::size_t i : inc) {
      QVec d = vsub(p.vertices[i], v0);
      if (!is_zero_vec(d)) {
        u1 = d;
        break;
      }
    }
    QVec u2 = cross3(n, u1);
    std::vector<QVec> flat;
    QVec centroid = {0, 0};
    for (std::size_t i : inc) {
      QVec d = vsub(p.vertices[i], v0);
      QVec q = {dot(u1, d), dot(u2, d)};
      centroid = vadd(centroid, q);
      flat.push_back(q);
    }
    centroid = vscale(Rational(1, static_cast<long>(inc.size())), centroid);
    std::vector<std::size_t> order(inc.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    AngleLess less{centroid};
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return less(flat[a], flat[b]); });
    std::vector<std::size_t> cyc;
    for (std::size_t i : order) cyc.push_back(inc[i]);
    cycles.push_back(cyc);
  }
  return cycles;
}

Rational Polytope3::volume() const {
  if (affine_dim < 3) return 0;
  QVec c = {0, 0, 0};
  for (const auto& v : vertices) c = vadd(c, v);
  c = vscale(Rational(1, static_cast<long>(vertices.size())), c);
  Rational vol;
  for (const auto& cyc : facet_cycles(*this)) {
    for (std::size_t i = 1; i + 1 < cyc.size(); ++i) {
      Rational t = det3(vsub(vertices[cyc[0]], c), vsub(vertices[cyc[i]], c),
                        vsub(vertices[cyc[i + 1]], c));
      vol += t.abs();
    }
  }
  return vol / 6;
}

bool Polytope3::contains(const QVec& p) const {
  if (empty()) return false;
  if (affine_dim == 0) return p == vertices[0];
  if (affine_dim == 1) {
    QVec d = vsub(vertices[1], vertices[0]);
    QVec e = vsub(p, vertices[0]);
    if (!is_zero_vec(cross3(d, e))) return false;
    Rational num = dot(d, e), den = dot(d, d);
    return num.sign() >= 0 && num <= den;
  }
  if (affine_dim == 2) {
    // Must lie on the plane, then inside the 2d cycle.
    QVec u1 = vsub(vertices[1], vertices[0]);
    QVec u2;
    for (std::size_t i = 2; i < vertices.size(); ++i) {
      QVec d = vsub(vertices[i], vertices[0]);
      if (!is_zero_vec(cross3(u1, d))) {
        u2 = d;
        break;
      }
    }
    QVec n = cross3(u1, u2);
    if (dot(n, p) != dot(n, vertices[0])) return false;
    std::vector<QVec> flat;
    for (const auto& v : vertices) flat.push_back({dot(u1, v), dot(u2, v)});
    QVec q = {dot(u1, p), dot(u2, p)};
    // The cycle is convex; accept if q is weakly on one side of every edge.
    int want = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      int s = cross2(flat[i], flat[(i + 1) % flat.size()], q).sign();
      if (s == 0) continue;
      if (want == 0)
        want = s;
      else if (s != want)
        return false;
    }
    return true;
  }
  for (const auto& [n, c] : facets)
    if (dot(n, p) > c) return false;
  return true;
}

Polytope3 translate(const Polytope3& p, const QVec& v) {
  Polytope3 r = p;
  for (auto& w : r.vertices) w = vadd(w, v);
  for (auto& [n, c] : r.facets) c += dot(n, v);
  return r;
}

Polygon2 polytope_section(const Polytope3& p, const Rational& t) {
  std::vector<QVec> pts;
  if (p.empty()) return convex_hull_2d(pts);
  if (p.affine_dim == 0) {
    if (p.vertices[0][0] == t) pts.push_back({p.vertices[0][1], p.vertices[0][2]});
    return convex_hull_2d(pts);
  }
  auto edge_cut = [&](const QVec& a, const QVec& b) {
    Rational da = a[0] - t, db = b[0] - t;
    if (da.is_zero()) pts.push_back({a[1], a[2]});
    if (db.is_zero()) pts.push_back({b[1], b[2]});
    if (da.sign() * db.sign() < 0) {
      Rational s = da / (da - db);
      QVec q = vadd(a, vscale(s, vsub(b, a)));
      pts.push_back({q[1], q[2]});
    }
  };
  if (p.affine_dim == 1) {
    edge_cut(p.vertices[0], p.vertices[1]);
    return convex_hull_2d(pts);
  }
  if (p.affine_dim == 2) {
    bool plane_is_section = true;
    for (const auto& v : p.vertices) plane_is_section &= (v[0] == t);
    if (plane_is_section) {
      for (const auto& v : p.vertices) pts.push_back({v[1], v[2]});
      return convex_hull_2d(pts);
    }
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      edge_cut(p.vertices[i], p.vertices[(i + 1) % p.vertices.size()]);
    return convex_hull_2d(pts);
  }
  // Full-dimensional: intersect the facet inequalities with the plane x1 = t
  // and collect vertices of the resulting 2d halfplane intersection.
  std::vector<std::pair<QVec, Rational>> lines;  // l.(y,z) <= c
  for (const auto& [n, c] : p.facets)
    lines.push_back({{n[1], n[2]}, c - n[0] * t});
  auto ok = [&](const QVec& q) {
    for (const auto& [l, c] : lines)
      if (dot(l, q) > c) return false;
    return true;
  };
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      QMat m(2, 2);
      m.at(0, 0) = lines[i].first[0];
      m.at(0, 1) = lines[i].first[1];
      m.at(1, 0) = lines[j].first[0];
      m.at(1, 1) = lines[j].first[1];
      auto sol = solve_linear(m, {lines[i].second, lines[j].second});
      if (sol && ok(*sol)) pts.push_back(*sol);
    }
  return convex_hull_2d(pts);
}

std::vector<QVec> filter_outside(const Polytope3& hull,
                                 const std::vector<QVec>& points) {
  std::vector<QVec> out;
  for (const auto& p : points)
    if (!hull.contains(p)) out.push_back(p);
  return out;
}

}  // namespace okb
