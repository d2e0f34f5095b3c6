#include "okbody/rational.hpp"

namespace okb {

Rational Rational::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  // Validate shape before handing to GMP: optional sign, digits, optional
  // "/digits" with nonzero denominator.
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string body = s;
  auto slash = body.find('/');
  std::string num = slash == std::string::npos ? body : body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!num.empty() && (num[0] == '-' || num[0] == '+')) num = num.substr(1);
  if (!digits(num) || !digits(den))
    throw std::invalid_argument("Rational: malformed literal '" + s + "'");
  mpq_class q(body);
  if (q.get_den() == 0)
    throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return Rational(q);
}

}  // namespace okb
