#include "curvforge/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace curvforge {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  bool ok = false;
  if (slash == std::string_view::npos) {
    ok = is_integer_literal(text);
  } else {
    ok = is_integer_literal(text.substr(0, slash)) &&
         is_integer_literal(text.substr(slash + 1));
  }
  if (!ok) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Rational value;
  if (mpq_set_str(value.get_mpq_t(), std::string(text).c_str(), 10) != 0) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (sgn(value.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in rational '" + std::string(text) + "'");
  }
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  return value.get_str();
}

}  // namespace curvforge
