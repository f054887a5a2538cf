#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace domlab {

// Exact rational; always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

// Accepts "p/q", "p" and surrounding blanks. Throws ParseError.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace domlab
