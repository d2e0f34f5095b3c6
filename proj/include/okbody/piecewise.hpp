// Continuous piecewise-linear (vector-valued) functions on a closed interval,
// stored as breakpoints with exact values; slopes are derived on demand.
#pragma once

#include "okbody/linalg.hpp"

namespace okb {

class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  // breakpoints must be strictly increasing; values[i] is the output vector at
  // breakpoints[i].  A single breakpoint describes a constant on a degenerate
  // interval [a, a].
  PiecewiseLinear(QVec breakpoints, std::vector<QVec> values);

  const QVec& breakpoints() const { return breaks_; }
  const std::vector<QVec>& values() const { return values_; }
  std::size_t pieces() const { return breaks_.size() < 2 ? breaks_.size() : breaks_.size() - 1; }
  std::size_t out_dim() const { return values_.empty() ? 0 : values_[0].size(); }
  Rational lo() const { return breaks_.front(); }
  Rational hi() const { return breaks_.back(); }

  QVec eval(const Rational& t) const;  // throws outside [lo, hi]
  QVec slope(std::size_t piece) const;
  QVec intercept(std::size_t piece) const;

  friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

 private:
  QVec breaks_;
  std::vector<QVec> values_;
};

}  // namespace okb
