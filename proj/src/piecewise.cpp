#include "okbody/piecewise.hpp"

#include <stdexcept>

namespace okb {

PiecewiseLinear::PiecewiseLinear(QVec breakpoints, std::vector<QVec> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.empty() || breaks_.size() != values_.size())
    throw std::invalid_argument("PiecewiseLinear: breakpoint/value mismatch");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i - 1] < breaks_[i]))
      throw std::invalid_argument("PiecewiseLinear: breakpoints not increasing");
}

QVec PiecewiseLinear::eval(const Rational& t) const {
  if (t < lo() || hi() < t)
    throw std::domain_error("PiecewiseLinear::eval: argument outside domain");
  if (breaks_.size() == 1) return values_[0];
  std::size_t i = 0;
  while (i + 2 < breaks_.size() && breaks_[i + 1] < t) ++i;
  if (t == breaks_[i + 1] && i + 2 < breaks_.size()) return values_[i + 1];
  Rational w = (t - breaks_[i]) / (breaks_[i + 1] - breaks_[i]);
  return vadd(values_[i], vscale(w, vsub(values_[i + 1], values_[i])));
}

QVec PiecewiseLinear::slope(std::size_t piece) const {
  if (breaks_.size() < 2 || piece + 1 >= breaks_.size())
    throw std::out_of_range("PiecewiseLinear::slope: no such piece");
  Rational dt = breaks_[piece + 1] - breaks_[piece];
  return vscale(Rational(1) / dt, vsub(values_[piece + 1], values_[piece]));
}

QVec PiecewiseLinear::intercept(std::size_t piece) const {
  QVec s = slope(piece);
  return vsub(values_[piece], vscale(breaks_[piece], s));
}

}  // namespace okb
