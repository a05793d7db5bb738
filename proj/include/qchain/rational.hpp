#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace qchain {

using Rational = boost::multiprecision::cpp_rational;

/// Parses a plain decimal literal ("0.3", "-1.25", "2e-3") exactly.
Rational rational_from_decimal(std::string_view text);

/// The rational whose decimal expansion is the shortest round-trip
/// representation of x, so 0.3 maps to 3/10 rather than the binary value.
Rational rational_from_double(double x);

double to_double(const Rational& r);

/// r^k for any integer k (r != 0 when k < 0).
Rational pow(const Rational& r, int k);

std::string to_string(const Rational& r);

}  // namespace qchain
