#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hypershift {

using Rational = mpq_class;
using Integer = mpz_class;

/// Serializes as "num/den" (always with a denominator, "0/1" for zero).
std::string to_string(const Rational& value);

/// Accepts "num/den" or a bare integer.
Rational parse_rational(std::string_view text);

Integer ipow(std::uint64_t base, std::uint64_t exponent);

/// base^exponent for a possibly negative exponent.
Rational rpow(std::uint64_t base, std::int64_t exponent);

Integer floor(const Rational& value);

inline Rational frac(const Rational& value) { return value - Rational(floor(value)); }

double to_double(const Rational& value);

}  // namespace hypershift
