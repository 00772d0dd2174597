#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace ergostat {

/// Arbitrary-precision integer, used as a natural number unless noted.
using BigNat = boost::multiprecision::cpp_int;
/// Exact rational; always kept normalized by the backend.
using Rational = boost::multiprecision::cpp_rational;

inline BigNat numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigNat denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Smallest integer >= q. Exact; never touches floating point.
BigNat ceil_rational(const Rational& q);
/// Largest integer <= q.
BigNat floor_rational(const Rational& q);

/// base^exp with exp a machine count.
BigNat ipow(const BigNat& base, std::uint64_t exp);

/// floor(n^(1/k)) for n >= 0, k >= 1 (Newton iteration on integers).
BigNat iroot_floor(const BigNat& n, unsigned k);

/// Parses "num/den", a plain integer, or a decimal literal ("0.25"), exactly.
/// Decimal fractions convert as written (25/100), never through binary
/// floating point. Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

/// "num/den" when the denominator is not 1, otherwise just the integer.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

/// Number of decimal digits of |n| (0 has one digit). Exact for small values,
/// and exact up to +-1 near power-of-ten boundaries for huge ones (computed
/// from a directed log10, falling back to string length only when ambiguous).
std::uint64_t decimal_digits(const BigNat& n);

/// Directed [lo, hi] enclosure of log10(n) for n >= 1.
std::pair<double, double> log10_bounds(const BigNat& n);

/// True if n has more than `digits` decimal digits, decided via log10 bounds
/// (the budget is a resource guard; the test is exact except within one digit
/// of the threshold, where it conservatively compares the lower bound).
bool exceeds_digit_budget(const BigNat& n, std::uint64_t digits);

}  // namespace ergostat
