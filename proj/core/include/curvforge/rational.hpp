#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curvforge {

// Exact rational scalar. GMP keeps every value in lowest terms with a
// positive denominator; all parsing below restores that invariant before a
// value escapes, so equality of Rationals is equality of numerals.
using Rational = mpq_class;

// Accepts "p", "-p", or "p/q" in base 10 and canonicalizes. Throws
// std::invalid_argument on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

}  // namespace curvforge
