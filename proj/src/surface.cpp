#include "okbody/surface.hpp"

#include <algorithm>
#include <set>

namespace okb {

namespace {

QMat gram(const SurfaceModel& m, const std::vector<std::size_t>& idx) {
  QMat g(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      g.at(i, j) = m.pair(m.negative_curves[idx[i]], m.negative_curves[idx[j]]);
  return g;
}

bool negative_definite(const QMat& g) {
  // Sylvester: leading principal minors alternate sign, starting negative.
  for (std::size_t k = 1; k <= g.rows; ++k) {
    QMat sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = g.at(i, j);
    Rational d = det(sub);
    if ((k % 2 == 1 && d.sign() >= 0) || (k % 2 == 0 && d.sign() <= 0))
      return false;
  }
  return true;
}

}  // namespace

void validate_surface_model(const SurfaceModel& m) {
  if (m.rank == 0 || m.basis_labels.size() != m.rank)
    throw ModelError("surface model '" + m.name + "': bad basis");
  if (m.intersection_form.rows != m.rank || m.intersection_form.cols != m.rank)
    throw ModelError("surface model '" + m.name + "': intersection form shape");
  for (std::size_t i = 0; i < m.rank; ++i)
    for (std::size_t j = 0; j < m.rank; ++j)
      if (m.intersection_form.at(i, j) != m.intersection_form.at(j, i))
        throw ModelError("surface model '" + m.name + "': form not symmetric");
  if (m.negative_curves.size() != m.negative_curve_labels.size())
    throw ModelError("surface model '" + m.name + "': curve label mismatch");
  for (std::size_t i = 0; i < m.negative_curves.size(); ++i) {
    if (m.pair(m.negative_curves[i], m.negative_curves[i]).sign() >= 0)
      throw ModelError("surface model '" + m.name + "': curve '" +
                       m.negative_curve_labels[i] +
                       "' has non-negative self-intersection");
    if (!m.eff_cone.contains(m.negative_curves[i]))
      throw ModelError("surface model '" + m.name + "': curve '" +
                       m.negative_curve_labels[i] + "' outside effective cone");
  }
  if (m.eff_cone.dim() != m.rank || m.nef_cone.dim() != m.rank)
    throw ModelError("surface model '" + m.name + "': cone dimension mismatch");
  // Nef classes must pair non-negatively with every effective generator.
  for (const auto& p : m.nef_cone.generators()) {
    if (!m.eff_cone.contains(p))
      throw ModelError("surface model '" + m.name +
                       "': nef generator outside effective cone");
    for (const auto& e : m.eff_cone.generators())
      if (m.pair(p, e).sign() < 0)
        throw ModelError("surface model '" + m.name +
                         "': nef generator pairs negatively with an effective class");
  }
}

ZariskiDecomposition zariski_decompose(const SurfaceModel& m, const QVec& D) {
  if (D.size() != m.rank)
    throw ModelError("zariski_decompose: divisor dimension mismatch");
  if (!m.eff_cone.contains(D))
    throw ModelError("zariski_decompose: divisor class is not pseudo-effective");
  std::set<std::size_t> support;
  for (std::size_t i = 0; i < m.negative_curves.size(); ++i)
    if (m.pair(D, m.negative_curves[i]).sign() < 0) support.insert(i);
  QVec coeffs;
  std::vector<std::size_t> idx;
  QVec N = zero_vec(m.rank);
  while (true) {
    idx.assign(support.begin(), support.end());
    N = zero_vec(m.rank);
    coeffs.assign(idx.size(), Rational(0));
    if (!idx.empty()) {
      QMat g = gram(m, idx);
      if (!negative_definite(g))
        throw ModelError(
            "zariski_decompose: support Gram matrix is not negative definite; "
            "model data inconsistent");
      QVec rhs(idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j)
        rhs[j] = m.pair(D, m.negative_curves[idx[j]]);
      auto sol = solve_linear(g, rhs);
      if (!sol)
        throw ModelError("zariski_decompose: singular Gram system; model data "
                         "inconsistent");
      coeffs = *sol;
      for (std::size_t j = 0; j < idx.size(); ++j)
        N = vadd(N, vscale(coeffs[j], m.negative_curves[idx[j]]));
    }
    QVec P = vsub(D, N);
    bool grew = false;
    for (std::size_t k = 0; k < m.negative_curves.size(); ++k) {
      if (support.count(k)) continue;
      if (m.pair(P, m.negative_curves[k]).sign() < 0) {
        support.insert(k);
        grew = true;
      }
    }
    if (!grew) break;
  }
  ZariskiDecomposition z;
  z.negative = N;
  z.positive = vsub(D, N);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (coeffs[j].sign() < 0)
      throw ModelError("zariski_decompose: negative coefficient on curve '" +
                       m.negative_curve_labels[idx[j]] +
                       "'; model data inconsistent");
    if (coeffs[j].sign() > 0) {
      z.support.push_back(m.negative_curve_labels[idx[j]]);
      z.coeffs[m.negative_curve_labels[idx[j]]] = coeffs[j];
    }
  }
  if (!m.nef_cone.contains(z.positive))
    throw ModelError(
        "zariski_decompose: positive part escapes the nef cone; model data "
        "inconsistent");
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (!m.pair(z.positive, m.negative_curves[idx[j]]).is_zero())
      throw ModelError(
          "zariski_decompose: positive part not orthogonal to the support");
  return z;
}

Rational asymptotic_valuation_surface(const SurfaceModel& m, const QVec& D,
                                      const QVec& curve_class) {
  ZariskiDecomposition z = zariski_decompose(m, D);
  QVec key = primitive(curve_class);
  for (std::size_t i = 0; i < m.negative_curves.size(); ++i)
    if (primitive(m.negative_curves[i]) == key) {
      auto it = z.coeffs.find(m.negative_curve_labels[i]);
      return it == z.coeffs.end() ? Rational(0) : it->second;
    }
  return 0;
}

Rational mu_surface(const SurfaceModel& m, const QVec& D, const QVec& C) {
  auto s = m.eff_cone.ray_exit(D, vneg(C));
  if (!s)
    throw ModelError("mu_surface: D - tC stays pseudo-effective for all t; "
                     "flag curve class degenerate");
  return *s;
}

namespace {

// Affine function u + v t; the largest closed interval around tm inside
// [lo, hi] where a family of such functions stays >= 0.
struct Affine1 {
  Rational u, v;
  Rational at(const Rational& t) const { return u + v * t; }
};

struct Window {
  Rational l, r;
};

Window valid_window(const std::vector<Affine1>& conds, const Rational& tm,
                    const Rational& lo, const Rational& hi) {
  Window w{lo, hi};
  for (const auto& c : conds) {
    if (c.v.sign() == 0) continue;  // constant; nonnegative at tm, stays so
    Rational root = -c.u / c.v;
    if (c.v.sign() > 0)
      w.l = max(w.l, root);
    else
      w.r = min(w.r, root);
  }
  if (tm < w.l || w.r < tm) w = {tm, tm};  // tm sits exactly on a wall cluster
  return w;
}

// Affine-in-t description of the Zariski data of D - tC for the support that
// is active at tm; conditions list everything that must stay >= 0 for the
// support to remain valid.
std::vector<Affine1> support_conditions(const SurfaceModel& m, const QVec& D,
                                        const QVec& C, const Rational& tm) {
  ZariskiDecomposition z = zariski_decompose(m, vsub(D, vscale(tm, C)));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.negative_curves.size(); ++i)
    if (z.coeffs.count(m.negative_curve_labels[i])) idx.push_back(i);
  std::vector<Affine1> conds;
  // Coefficient functions a(t) = G^-1 (D.Cj) - t G^-1 (C.Cj).
  QVec a0(idx.size()), a1(idx.size());
  if (!idx.empty()) {
    QMat g = gram(m, idx);
    QVec b0(idx.size()), b1(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      b0[j] = m.pair(D, m.negative_curves[idx[j]]);
      b1[j] = -m.pair(C, m.negative_curves[idx[j]]);
    }
    a0 = *solve_linear(g, b0);
    a1 = *solve_linear(g, b1);
    for (std::size_t j = 0; j < idx.size(); ++j) conds.push_back({a0[j], a1[j]});
  }
  // P(t) stays in the nef cone (affine in t).
  QVec P0 = D, P1 = vneg(C);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    P0 = vsub(P0, vscale(a0[j], m.negative_curves[idx[j]]));
    P1 = vsub(P1, vscale(a1[j], m.negative_curves[idx[j]]));
  }
  for (const auto& f : m.nef_cone.facets())
    conds.push_back({dot(f, P0), dot(f, P1)});
  // P(t) must keep pairing non-negatively with the curves outside the support
  // (they enter the support exactly where this hits zero).
  std::set<std::size_t> in_support(idx.begin(), idx.end());
  for (std::size_t k = 0; k < m.negative_curves.size(); ++k) {
    if (in_support.count(k)) continue;
    conds.push_back({m.pair(P0, m.negative_curves[k]),
                     m.pair(P1, m.negative_curves[k])});
  }
  // D - tC stays pseudo-effective.
  for (const auto& f : m.eff_cone.facets())
    conds.push_back({dot(f, D), -dot(f, C)});
  return conds;
}

void walk(const SurfaceModel& m, const QVec& D, const QVec& C,
          const Rational& lo, const Rational& hi, std::set<Rational>& breaks,
          int depth) {
  if (hi < lo || lo == hi) return;
  if (depth > 64)
    throw ModelError("negative_part_breakpoints: chamber walk failed to "
                     "terminate; model data inconsistent");
  Rational tm = (lo + hi) / 2;
  auto conds = support_conditions(m, D, C, tm);
  Window w = valid_window(conds, tm, lo, hi);
  if (lo < w.l) {
    breaks.insert(w.l);
    walk(m, D, C, lo, w.l, breaks, depth + 1);
  }
  if (w.r < hi) {
    breaks.insert(w.r);
    walk(m, D, C, w.r, hi, breaks, depth + 1);
  }
}

}  // namespace

QVec negative_part_breakpoints(const SurfaceModel& m, const QVec& D,
                               const QVec& C, const Rational& t0,
                               const Rational& t1) {
  if (t1 < t0)
    throw ModelError("negative_part_breakpoints: empty parameter interval");
  std::set<Rational> breaks{t0, t1};
  walk(m, D, C, t0, t1, breaks, 0);
  return QVec(breaks.begin(), breaks.end());
}

SurfacePolygon okounkov_polygon(const SurfaceModel& m, const SurfaceFlag& flag,
                                const QVec& D, bool allow_limiting) {
  validate_surface_model(m);
  if (!m.eff_cone.contains(D))
    throw ModelError("okounkov_polygon: divisor class is not pseudo-effective");
  bool big = m.eff_cone.contains_interior(D);
  if (!big && !allow_limiting)
    throw ModelError("okounkov_polygon: divisor class is not big "
                     "(pass limiting=true for the limiting polygon)");
  const QVec& C = flag.curve_class;
  SurfacePolygon out;
  out.limiting = !big;
  out.ord = asymptotic_valuation_surface(m, D, C);
  out.mu = mu_surface(m, D, C);
  if (out.mu < out.ord)
    throw ModelError("okounkov_polygon: ord exceeds mu; model data inconsistent");

  // Index of the flag curve among the negative curves, if it is one.
  std::optional<std::string> flag_label;
  QVec key = primitive(C);
  for (std::size_t i = 0; i < m.negative_curves.size(); ++i)
    if (primitive(m.negative_curves[i]) == key)
      flag_label = m.negative_curve_labels[i];

  QVec breaks = out.ord == out.mu
                    ? QVec{out.ord}
                    : negative_part_breakpoints(m, D, C, out.ord, out.mu);
  std::vector<QVec> alpha_vals, beta_vals;
  std::vector<QVec> pts;
  auto eval_at = [&](const Rational& t) {
    ZariskiDecomposition z = zariski_decompose(m, vsub(D, vscale(t, C)));
    if (flag_label && z.coeffs.count(*flag_label))
      throw ModelError("okounkov_polygon: flag curve '" + *flag_label +
                       "' lies in the negative support at t = " + t.str() +
                       "; flag inadmissible for this divisor");
    Rational a;
    for (const auto& [label, c] : z.coeffs) {
      auto it = flag.point_data.find(label);
      if (it != flag.point_data.end()) a += c * it->second;
    }
    Rational b = a + m.pair(C, z.positive);
    if (b < a)
      throw ModelError("okounkov_polygon: upper boundary below lower boundary; "
                       "model data inconsistent");
    return std::make_pair(a, b);
  };
  for (const auto& t : breaks) {
    auto [a, b] = eval_at(t);
    alpha_vals.push_back({a});
    beta_vals.push_back({b});
    pts.push_back({t, a});
    pts.push_back({t, b});
  }
  out.polygon = convex_hull_2d(pts);
  out.alpha = PiecewiseLinear(breaks, alpha_vals);
  out.beta = PiecewiseLinear(breaks, beta_vals);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rational tm = (breaks[i] + breaks[i + 1]) / 2;
    ZariskiDecomposition z = zariski_decompose(m, vsub(D, vscale(tm, C)));
    out.supports.push_back(z.support);
  }
  if (breaks.size() == 1) {
    ZariskiDecomposition z = zariski_decompose(m, vsub(D, vscale(breaks[0], C)));
    out.supports.push_back(z.support);
  }
  // Mid-piece convexity audit: the polygon boundary must reproduce alpha/beta.
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rational tm = (breaks[i] + breaks[i + 1]) / 2;
    auto [a, b] = eval_at(tm);
    if (a != out.alpha.eval(tm)[0] || b != out.beta.eval(tm)[0])
      throw ModelError("okounkov_polygon: boundary is not piecewise linear on "
                       "the computed pieces; model data inconsistent");
  }
  return out;
}

std::pair<Rational, Rational> okounkov_curve(const Rational& d) {
  if (d.sign() < 0)
    throw ModelError("okounkov_curve: negative degree has no effective divisor");
  return {Rational(0), d};
}

QVec surface_family_breakpoints(const SurfaceModel& m, const QVec& C,
                                const QVec& A0, const QVec& A1,
                                const Rational& lo, const Rational& hi) {
  if (m.negative_curves.size() > 12)
    throw ModelError("surface_family_breakpoints: too many negative curves");
  // Lines u + p t + q x2 = 0 in the (t, x2)-plane across which the Zariski
  // chamber data of A0 + t A1 - x2 C can change.
  struct Line {
    Rational u, p, q;
  };
  std::vector<Line> lines;
  auto add_line = [&](const Rational& u, const Rational& p, const Rational& q) {
    if (p.is_zero() && q.is_zero()) return;
    QVec key = primitive_signed({u, p, q});
    lines.push_back({key[0], key[1], key[2]});
  };
  add_line(0, 0, 1);  // x2 = 0
  for (const auto& f : m.eff_cone.facets())
    add_line(dot(f, A0), dot(f, A1), -dot(f, C));
  std::size_t ncurves = m.negative_curves.size();
  for (std::size_t mask = 0; mask < (1u << ncurves); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ncurves; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    QVec a_u, a_p, a_q;
    QVec P_u = A0, P_p = A1, P_q = vneg(C);
    if (!idx.empty()) {
      QMat g = gram(m, idx);
      if (!negative_definite(g)) continue;  // support can never be active
      QVec bu(idx.size()), bp(idx.size()), bq(idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j) {
        bu[j] = m.pair(A0, m.negative_curves[idx[j]]);
        bp[j] = m.pair(A1, m.negative_curves[idx[j]]);
        bq[j] = -m.pair(C, m.negative_curves[idx[j]]);
      }
      a_u = *solve_linear(g, bu);
      a_p = *solve_linear(g, bp);
      a_q = *solve_linear(g, bq);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        add_line(a_u[j], a_p[j], a_q[j]);
        P_u = vsub(P_u, vscale(a_u[j], m.negative_curves[idx[j]]));
        P_p = vsub(P_p, vscale(a_p[j], m.negative_curves[idx[j]]));
        P_q = vsub(P_q, vscale(a_q[j], m.negative_curves[idx[j]]));
      }
    }
    for (const auto& f : m.nef_cone.facets())
      add_line(dot(f, P_u), dot(f, P_p), dot(f, P_q));
    for (std::size_t k = 0; k < ncurves; ++k) {
      if (mask & (1u << k)) continue;
      add_line(m.pair(P_u, m.negative_curves[k]),
               m.pair(P_p, m.negative_curves[k]),
               m.pair(P_q, m.negative_curves[k]));
    }
  }
  std::set<Rational> cands;
  auto push = [&](const Rational& t) {
    if (!(t < lo) && !(hi < t)) cands.insert(t);
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].q.is_zero() && !lines[i].p.is_zero())
      push(-lines[i].u / lines[i].p);
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      QMat mm(2, 2);
      mm.at(0, 0) = lines[i].p;
      mm.at(0, 1) = lines[i].q;
      mm.at(1, 0) = lines[j].p;
      mm.at(1, 1) = lines[j].q;
      auto sol = solve_linear(mm, {-lines[i].u, -lines[j].u});
      if (sol) push((*sol)[0]);
    }
  }
  return QVec(cands.begin(), cands.end());
}

}  // namespace okb
