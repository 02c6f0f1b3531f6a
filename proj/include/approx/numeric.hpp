#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace approx {

using Integer = mpz_class;
using Rational = mpq_class;

/// 2^e as an exact rational (e may be negative).
Rational pow2(long e);

/// Largest finite binary64 value, 2^1024 - 2^971.
const Rational& max_float();

/// Exact rational value of a finite binary64 number.
Rational exact_value(double d);

/// floor(log2 |x|) for x != 0.
long ilog2(const Rational& x);

// Conversions of an exact rational to binary64. Overflow follows IEEE 754:
// nearest rounds to +-inf past the halfway point above MAXFLOAT, the directed
// modes saturate on the side that keeps the result a bound.
double round_nearest(const Rational& x);
double round_down(const Rational& x);
double round_up(const Rational& x);

/// Spacing between consecutive binary64 values in the binade of |x|
/// (2^-1074 in the subnormal range). x must be finite.
Rational ulp_of(const Rational& x);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
Rational abs_of(const Rational& x);

/// Parses "p/q", a decimal "-1.25", or scientific "1.5e-3" exactly.
std::optional<Rational> parse_rational(std::string_view text);

/// Exact decimal when the denominator divides a power of ten ("0.5", "3.0"),
/// otherwise "p/q".
std::string format_rational(const Rational& x);

/// Shortest round-trip decimal for a binary64 value; "inf", "-inf", "nan"
/// for the non-finite ones.
std::string format_double(double d);
std::optional<double> parse_double(std::string_view text);

/// Hex form of the IEEE 754 bit pattern, e.g. "0x3FD5555555555555".
std::string bits_hex(double d);
std::uint64_t bits_of(double d);

/// Decimal rendering rounded to `digits` significant digits, for reports.
std::string approx_decimal(const Rational& x, int digits = 17);

}  // namespace approx
