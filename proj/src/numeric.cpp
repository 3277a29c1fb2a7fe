#include "cmxprony/numeric.hpp"

#include "cmxprony/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cmx {

Precision Precision::parse(std::string_view text) {
  if (text == "double") return double_precision();
  constexpr std::string_view prefix = "ext:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto digits_text = text.substr(prefix.size());
    unsigned digits = 0;
    auto [ptr, ec] = std::from_chars(digits_text.data(), digits_text.data() + digits_text.size(), digits);
    if (ec == std::errc() && ptr == digits_text.data() + digits_text.size() && digits >= 20 && digits <= 1000)
      return extended(digits);
  }
  if (text == "ext") return extended();
  throw ConfigError("precision must be 'double' or 'ext:DIGITS' with 20 <= DIGITS <= 1000, got '" +
                    std::string(text) + "'");
}

std::string Precision::to_string() const {
  return kind == Kind::Double ? "double" : "ext:" + std::to_string(digits);
}

ScopedDigits::ScopedDigits(unsigned digits) : saved_(Extended::default_precision()) {
  Extended::default_precision(digits);
}

ScopedDigits::~ScopedDigits() { Extended::default_precision(saved_); }

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ConfigError("malformed number '" + std::string(whole) + "'");
  for (char c : text)
    if (c < '0' || c > '9') throw ConfigError("malformed number '" + std::string(whole) + "'");
  // a leading zero would select octal
  while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
  return Integer(std::string(text));
}

Integer power_of_ten(long exponent) {
  Integer result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    Integer den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
      if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty())
        throw ConfigError("malformed number '" + std::string(whole) + "'");
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits(text);
    if (auto dot = digits.find('.'); dot != std::string::npos) {
      exponent -= static_cast<long>(digits.size() - dot - 1);
      digits.erase(dot, 1);
    }
    if (std::abs(exponent) > 4000) throw ConfigError("exponent out of range in '" + std::string(whole) + "'");
    Integer mantissa = parse_integer(digits, whole);
    value = exponent >= 0 ? Rational(mantissa * power_of_ten(exponent))
                          : Rational(mantissa, power_of_ten(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string format_number(double value, int digits) {
  if (value == 0.0) return "0";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

}  // namespace cmx
