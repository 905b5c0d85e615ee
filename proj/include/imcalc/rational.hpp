#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace imcalc {

/// Exact rational number, always held in lowest terms with a positive
/// denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading sign). Throws DomainError on
/// malformed text or zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace imcalc
