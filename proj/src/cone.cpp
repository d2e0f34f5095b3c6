#include "okbody/cone.hpp"

#include <algorithm>
#include <functional>

namespace okb {

namespace {

std::vector<QVec> canon_rays(const std::vector<QVec>& in) {
  std::vector<QVec> out;
  for (const auto& v : in) {
    QVec p = primitive(v);
    if (!is_zero_vec(p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) break;
      if (i == 0) return;
    }
    if (k == 0) return;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Orientation of a candidate normal against a family of rays: returns +1/-1
// if all dot products are >= 0 (resp. <= 0), 0 if signs are mixed.
int one_sided(const QVec& n, const std::vector<QVec>& rays) {
  bool pos = false, neg = false;
  for (const auto& g : rays) {
    int s = dot(n, g).sign();
    if (s > 0) pos = true;
    if (s < 0) neg = true;
    if (pos && neg) return 0;
  }
  return neg ? -1 : 1;
}

// Minimal facet list of cone(gens) in R^dim.  Generators are assumed
// canonical (primitive, sorted, deduplicated).
std::vector<QVec> v_to_h(std::size_t dim, const std::vector<QVec>& gens) {
  std::vector<QVec> facets;
  // Equalities: normals vanishing on every generator, emitted as +/- pairs.
  std::vector<QVec> eq = gens.empty()
                             ? std::vector<QVec>{}
                             : nullspace(QMat::from_rows(gens));
  if (gens.empty())
    for (std::size_t i = 0; i < dim; ++i) eq.push_back(unit_vec(dim, i));
  for (const auto& n : eq) {
    QVec p = primitive_signed(n);
    facets.push_back(p);
    facets.push_back(vneg(p));
  }
  std::size_t s = gens.empty() ? 0 : rank(QMat::from_rows(gens));
  if (s >= 1) {
    // Orthonormal-free basis of the span: echelon rows of the generators.
    QMat sp = QMat::from_rows(gens);
    std::vector<QVec> span_basis;
    {
      QMat w = sp;
      // Reuse rank-style elimination to extract independent rows.
      std::vector<QVec> rows;
      for (std::size_t i = 0; i < w.rows; ++i) rows.push_back(w.row(i));
      std::vector<QVec> basis;
      for (const auto& r : rows) {
        basis.push_back(r);
        if (rank(QMat::from_rows(basis)) < basis.size()) basis.pop_back();
      }
      span_basis = basis;
    }
    // Facet normals constrained to the span: n = B^T y with y in the
    // nullspace of the chosen (s-1)-subset of generators.
    QMat B = QMat::from_rows(span_basis);  // s x dim
    for_each_subset(gens.size(), s - 1, [&](const std::vector<std::size_t>& idx) {
      QMat m(idx.size(), s);
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < s; ++j)
          m.at(i, j) = dot(gens[idx[i]], B.row(j));
      auto ns = nullspace(m);
      if (ns.size() != 1) return;  // subset not of rank s-1
      QVec n(dim);
      for (std::size_t j = 0; j < s; ++j)
        n = vadd(n, vscale(ns[0][j], B.row(j)));
      int side = one_sided(n, gens);
      if (side == 0) return;
      facets.push_back(side > 0 ? n : vneg(n));
    });
  }
  return canon_rays(facets);
}

// Minimal generator list (extreme rays plus +/- lineality basis) of the cone
// {x : f.x >= 0 for all facets} in R^dim.
std::vector<QVec> h_to_v(std::size_t dim, const std::vector<QVec>& facets) {
  if (facets.empty()) {
    std::vector<QVec> gens;
    for (std::size_t i = 0; i < dim; ++i) {
      gens.push_back(unit_vec(dim, i));
      gens.push_back(vneg(unit_vec(dim, i)));
    }
    return canon_rays(gens);
  }
  std::vector<QVec> gens;
  std::vector<QVec> lin = nullspace(QMat::from_rows(facets));
  for (const auto& l : lin) {
    QVec p = primitive_signed(l);
    gens.push_back(p);
    gens.push_back(vneg(p));
  }
  // Pointed part: parametrize the complement of the lineality space and
  // enumerate extreme rays there.
  std::vector<QVec> comp_basis;
  if (lin.empty()) {
    for (std::size_t i = 0; i < dim; ++i) comp_basis.push_back(unit_vec(dim, i));
  } else {
    comp_basis = nullspace(QMat::from_rows(lin));
  }
  std::size_t k = comp_basis.size();
  QMat B = QMat::from_rows(comp_basis);  // k x dim
  std::vector<QVec> red;                 // facets expressed in the y-coordinates
  for (const auto& f : facets) {
    QVec fr(k);
    for (std::size_t j = 0; j < k; ++j) fr[j] = dot(f, B.row(j));
    red.push_back(fr);
  }
  for_each_subset(red.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
    QMat m(idx.size(), k);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = red[idx[i]][j];
    auto ns = nullspace(m);
    if (ns.size() != 1) return;
    int side = one_sided(ns[0], red);  // reuse: dot in y-coordinates
    if (side == 0) return;
    QVec y = side > 0 ? ns[0] : vneg(ns[0]);
    QVec g(dim);
    for (std::size_t j = 0; j < k; ++j) g = vadd(g, vscale(y[j], B.row(j)));
    gens.push_back(g);
  });
  return canon_rays(gens);
}

}  // namespace

PolyhedralCone PolyhedralCone::from_generators(std::size_t dim,
                                               const std::vector<QVec>& gens) {
  for (const auto& g : gens)
    if (g.size() != dim)
      throw std::invalid_argument("PolyhedralCone: generator dimension mismatch");
  PolyhedralCone c;
  c.dim_ = dim;
  std::vector<QVec> g0 = canon_rays(gens);
  c.facets_ = v_to_h(dim, g0);
  c.generators_ = h_to_v(dim, c.facets_);  // round trip yields extreme rays
  return c;
}

PolyhedralCone PolyhedralCone::from_facets(std::size_t dim,
                                           const std::vector<QVec>& facets) {
  for (const auto& f : facets)
    if (f.size() != dim)
      throw std::invalid_argument("PolyhedralCone: facet dimension mismatch");
  PolyhedralCone c;
  c.dim_ = dim;
  std::vector<QVec> f0 = canon_rays(facets);
  c.generators_ = h_to_v(dim, f0);
  c.facets_ = v_to_h(dim, c.generators_);  // round trip removes redundancy
  return c;
}

bool PolyhedralCone::contains(const QVec& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("PolyhedralCone::contains: dimension mismatch");
  for (const auto& f : facets_)
    if (dot(f, x).sign() < 0) return false;
  return true;
}

bool PolyhedralCone::is_full_dim() const {
  if (dim_ == 0) return true;
  if (generators_.empty()) return false;
  return rank(QMat::from_rows(generators_)) == dim_;
}

bool PolyhedralCone::contains_interior(const QVec& x) const {
  if (!is_full_dim()) return false;
  for (const auto& f : facets_)
    if (dot(f, x).sign() <= 0) return false;
  return true;
}

std::optional<Rational> PolyhedralCone::ray_exit(const QVec& base,
                                                 const QVec& dir) const {
  if (!contains(base))
    throw std::domain_error("ray_exit: base point is outside the cone");
  std::optional<Rational> best;
  for (const auto& f : facets_) {
    Rational fd = dot(f, dir);
    if (fd.sign() >= 0) continue;
    Rational bound = dot(f, base) / -fd;
    if (!best || bound < *best) best = bound;
  }
  return best;
}

}  // namespace okb
