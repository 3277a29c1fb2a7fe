#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Core>

#include <limits>
#include <string>
#include <string_view>

namespace cmx {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Variable-precision binary float; working digits are set with ScopedDigits.
using Extended = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

/// Arithmetic used by the floating-point stages (Prony solves, Ritz problems).
struct Precision {
  enum class Kind { Double, Extended };

  Kind kind = Kind::Extended;
  unsigned digits = 50;

  static Precision double_precision() { return {Kind::Double, 16}; }
  static Precision extended(unsigned digits = 50) { return {Kind::Extended, digits}; }

  /// Accepts "double" or "ext:DIGITS".
  static Precision parse(std::string_view text);
  std::string to_string() const;

  bool is_extended() const { return kind == Kind::Extended; }
  bool operator==(const Precision&) const = default;
};

/// Sets the default mpfr precision for the lifetime of the object.
class ScopedDigits {
 public:
  explicit ScopedDigits(unsigned digits);
  ~ScopedDigits();
  ScopedDigits(const ScopedDigits&) = delete;
  ScopedDigits& operator=(const ScopedDigits&) = delete;

 private:
  unsigned saved_;
};

/// Parses "p", "p/q" or a decimal literal such as "-0.25" or "1.5e-3" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Machine epsilon of `T` at the current working precision.
template <class T>
T machine_epsilon() {
  return std::numeric_limits<T>::epsilon();
}

/// Formats with `digits` significant digits, trimming nothing.
std::string format_number(double value, int digits = 12);

}  // namespace cmx

namespace Eigen {

template <>
struct NumTraits<cmx::Extended> : GenericNumTraits<cmx::Extended> {
  using Real = cmx::Extended;
  using NonInteger = cmx::Extended;
  using Nested = cmx::Extended;
  using Literal = cmx::Extended;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };

  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1000; }
  static Real highest() { return std::numeric_limits<Real>::max(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
};

}  // namespace Eigen
