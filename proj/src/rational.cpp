#include "qchain/rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qchain/errors.hpp"

namespace qchain {

Rational rational_from_decimal(std::string_view text) {
  const auto bad = [&] { return InvalidSpec("malformed decimal literal '" + std::string(text) + "'"); };
  std::string_view digits = text;
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    digits = text.substr(0, e);
    auto rest = text.substr(e + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size()) throw bad();
  }
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  boost::multiprecision::cpp_int mantissa = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : digits) {
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) --exponent;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw bad();
    }
  }
  if (!seen_digit) throw bad();
  Rational r = Rational(mantissa) * pow(Rational(10), exponent);
  return negative ? Rational(-r) : r;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidSpec("non-finite value has no rational form");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw InvalidSpec("cannot format value");
  return rational_from_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational pow(const Rational& r, int k) {
  if (k < 0) {
    if (r == 0) throw std::domain_error("zero to a negative power");
    return pow(Rational(1) / r, -k);
  }
  Rational out(1);
  Rational base = r;
  for (unsigned e = static_cast<unsigned>(k); e; e >>= 1) {
    if (e & 1u) out *= base;
    if (e > 1) base *= base;
  }
  return out;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qchain
