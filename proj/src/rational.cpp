#include "kzm/rational.hpp"

#include "kzm/error.hpp"

namespace kzm {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw DomainError("malformed rational literal '" + text + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace kzm
