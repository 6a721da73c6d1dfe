#ifndef NCFREE_RATIONAL_HPP
#define NCFREE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncfree {

/// Exact rational scalar. Always kept in canonical form (reduced, sign on
/// the numerator); all arithmetic through mpq_class preserves this.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0 after normalization). Throws
/// std::invalid_argument on anything else.
Rational rational_from_string(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& value);

/// Fixed-point decimal rendering with `digits` fractional digits,
/// round-half-away-from-zero. Display only; never used for comparisons.
std::string rational_to_decimal(const Rational& value, int digits);

}  // namespace ncfree

#endif
