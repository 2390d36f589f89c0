/**
 * @file rational.hpp
 * @brief Exact rational arithmetic (GMP-backed) and canonical text I/O.
 *
 * All arithmetic in this library is exact.  Rationals are GMP's mpq_class in
 * canonical form (coprime numerator/denominator, positive denominator); the
 * text form is "p" for integers and "p/q" otherwise.
 */
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace logtangent {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parse "p" or "p/q" (optional leading +/-, no whitespace).  Empty optional
/// on malformed input or zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

/// gcd of |a|,|b| with gcd(0,0) = 0.
Integer int_gcd(const Integer& a, const Integer& b);

/**
 * Scale a rational vector to a primitive integer vector: clear denominators,
 * divide by the content, and flip signs so the first nonzero entry is
 * positive.  The zero vector maps to itself.
 */
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace logtangent
