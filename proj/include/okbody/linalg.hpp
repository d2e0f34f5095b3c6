// Dense exact linear algebra over the rationals: just enough for the
// polyhedral machinery (solve, rank, nullspace, primitive rescaling).
#pragma once

#include <optional>

#include "okbody/rational.hpp"

namespace okb {

struct QMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> a;  // row-major

  QMat() = default;
  QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static QMat from_rows(const std::vector<QVec>& rs);

  Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  QVec row(std::size_t i) const;

  friend bool operator==(const QMat&, const QMat&) = default;
};

// Vector helpers.
Rational dot(const QVec& x, const QVec& y);
QVec vadd(const QVec& x, const QVec& y);
QVec vsub(const QVec& x, const QVec& y);
QVec vscale(const Rational& c, const QVec& x);
QVec vneg(const QVec& x);
bool is_zero_vec(const QVec& x);
QVec zero_vec(std::size_t n);
QVec unit_vec(std::size_t n, std::size_t i);
QVec mat_vec(const QMat& m, const QVec& x);

// Lexicographic comparison, used for all canonical orderings.
bool lex_less(const QVec& x, const QVec& y);

// Scales a nonzero rational vector to the unique primitive integer vector on
// the same ray (no sign flip).  Zero vectors are returned unchanged.
QVec primitive(const QVec& x);

// Like primitive(), but also flips sign so the first nonzero entry is
// positive; canonical representative of a line through the origin.
QVec primitive_signed(const QVec& x);

std::size_t rank(QMat m);

// Unique solution of a square system; nullopt when the matrix is singular.
std::optional<QVec> solve_linear(const QMat& m, const QVec& b);

// Any particular solution of a (possibly rectangular) consistent system;
// nullopt when inconsistent.  Free variables are set to zero.
std::optional<QVec> solve_general(QMat m, QVec b);

// Basis of the right nullspace {x : m x = 0}, deterministically ordered.
std::vector<QVec> nullspace(QMat m);

Rational det(QMat m);

}  // namespace okb
