#include "okbody/linalg.hpp"

#include <cassert>

namespace okb {

QMat QMat::from_rows(const std::vector<QVec>& rs) {
  QMat m(rs.size(), rs.empty() ? 0 : rs[0].size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    assert(rs[i].size() == m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
  }
  return m;
}

QVec QMat::row(std::size_t i) const {
  return QVec(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

Rational dot(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

QVec vadd(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  QVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

QVec vsub(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  QVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

QVec vscale(const Rational& c, const QVec& x) {
  QVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

QVec vneg(const QVec& x) { return vscale(Rational(-1), x); }

bool is_zero_vec(const QVec& x) {
  for (const auto& v : x)
    if (!v.is_zero()) return false;
  return true;
}

QVec zero_vec(std::size_t n) { return QVec(n); }

QVec unit_vec(std::size_t n, std::size_t i) {
  QVec r(n);
  r[i] = 1;
  return r;
}

QVec mat_vec(const QMat& m, const QVec& x) {
  assert(x.size() == m.cols);
  QVec r(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    Rational s;
    for (std::size_t j = 0; j < m.cols; ++j) s += m.at(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

bool lex_less(const QVec& x, const QVec& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (y[i] < x[i]) return false;
  }
  return x.size() < y.size();
}

QVec primitive(const QVec& x) {
  if (is_zero_vec(x)) return x;
  mpz_class l(1), g(0);
  for (const auto& v : x) {
    mpz_class d = v.den();
    mpz_class t;
    mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = t;
  }
  std::vector<mpz_class> ints(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mpq_class scaled = x[i].raw() * mpq_class(l);
    ints[i] = scaled.get_num();  // denominator is 1 after scaling by the lcm
    mpz_class t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    g = t;
  }
  QVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    r[i] = Rational(mpq_class(ints[i] / g));
  return r;
}

QVec primitive_signed(const QVec& x) {
  QVec p = primitive(x);
  for (const auto& v : p) {
    if (v.sign() > 0) return p;
    if (v.sign() < 0) return vneg(p);
  }
  return p;
}

// Row reduction to echelon form; returns pivot columns.  Operates in place.
static std::vector<std::size_t> echelon(QMat& m, QVec* rhs) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, c).is_zero()) ++p;
    if (p == m.rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
      if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
    }
    Rational inv = Rational(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    if (rhs) (*rhs)[r] *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        m.at(i, j) -= f * m.at(r, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMat m) { return echelon(m, nullptr).size(); }

std::optional<QVec> solve_linear(const QMat& m, const QVec& b) {
  if (m.rows != m.cols) throw std::invalid_argument("solve_linear: not square");
  QMat w = m;
  QVec r = b;
  auto pivots = echelon(w, &r);
  if (pivots.size() != m.cols) return std::nullopt;
  return r;
}

std::optional<QVec> solve_general(QMat m, QVec b) {
  auto pivots = echelon(m, &b);
  // Consistency: zero rows of m must have zero rhs.
  for (std::size_t i = pivots.size(); i < m.rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  QVec x(m.cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

std::vector<QVec> nullspace(QMat m) {
  std::size_t n = m.cols;
  auto pivots = echelon(m, nullptr);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -m.at(i, f);
    basis.push_back(v);
  }
  return basis;
}

Rational det(QMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  Rational d(1);
  std::size_t n = m.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m.at(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rational inv = Rational(1) / m.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

}  // namespace okb
