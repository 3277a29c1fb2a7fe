#include "cmxprony/exact_scalar.hpp"

#include "cmxprony/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <sstream>

namespace cmx {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Rational integer_power(const Rational& base, long exponent) {
  Rational result = 1;
  Rational factor = exponent >= 0 ? base : Rational(1) / base;
  for (long n = exponent >= 0 ? exponent : -exponent; n > 0; n >>= 1) {
    if (n & 1) result *= factor;
    factor *= factor;
  }
  return result;
}

std::optional<Integer> exact_sqrt(const Integer& value) {
  if (value < 0) return std::nullopt;
  Integer root = boost::multiprecision::sqrt(value);
  if (root * root == value) return root;
  return std::nullopt;
}

}  // namespace

ExactScalar::ExactScalar(Rational coeff) : coeff_(std::move(coeff)) {}

ExactScalar ExactScalar::power(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw Error("ExactScalar::power requires a positive base");
  ExactScalar result;
  result.radicals_[base] = exponent;
  result.canonicalize();
  return result;
}

ExactScalar ExactScalar::pi_power(const Rational& exponent) {
  ExactScalar result;
  result.pi_exponent_ = exponent;
  return result;
}

ExactScalar ExactScalar::exp_of(const Rational& argument) {
  ExactScalar result;
  result.exp_argument_ = argument;
  return result;
}

std::optional<Rational> ExactScalar::as_rational() const {
  if (coeff_ == 0) return Rational(0);
  if (!radicals_.empty() || pi_exponent_ != 0 || exp_argument_ != 0) return std::nullopt;
  return coeff_;
}

ExactScalar ExactScalar::sqrt() const {
  if (coeff_ < 0) throw NonNormalizable("square root of a negative closed-form value");
  ExactScalar result;
  if (coeff_ == 0) {
    result.coeff_ = 0;
    return result;
  }
  for (const auto& [base, exponent] : radicals_) result.radicals_[base] = exponent / 2;
  result.pi_exponent_ = pi_exponent_ / 2;
  result.exp_argument_ = exp_argument_ / 2;
  auto num = exact_sqrt(numerator(coeff_));
  auto den = exact_sqrt(denominator(coeff_));
  if (num && den) {
    result.coeff_ = Rational(*num, *den);
  } else {
    result.coeff_ = 1;
    result.radicals_[coeff_] += Rational(1, 2);
  }
  result.canonicalize();
  return result;
}

ExactScalar ExactScalar::inverse() const {
  if (coeff_ == 0) throw Error("ExactScalar: division by zero");
  ExactScalar result;
  result.coeff_ = Rational(1) / coeff_;
  for (const auto& [base, exponent] : radicals_) result.radicals_[base] = -exponent;
  result.pi_exponent_ = -pi_exponent_;
  result.exp_argument_ = -exp_argument_;
  result.canonicalize();
  return result;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& other) {
  coeff_ *= other.coeff_;
  if (coeff_ == 0) {
    *this = ExactScalar(Rational(0));
    return *this;
  }
  for (const auto& [base, exponent] : other.radicals_) radicals_[base] += exponent;
  pi_exponent_ += other.pi_exponent_;
  exp_argument_ += other.exp_argument_;
  canonicalize();
  return *this;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar result = *this;
  result.coeff_ = -coeff_;
  return result;
}

void ExactScalar::canonicalize() {
  if (coeff_ == 0) {
    radicals_.clear();
    pi_exponent_ = 0;
    exp_argument_ = 0;
    return;
  }
  std::map<Rational, Rational> reduced;
  for (const auto& [base, exponent] : radicals_) {
    if (base == 1 || exponent == 0) continue;
    if (base < 1) reduced[Rational(1) / base] -= exponent;
    else reduced[base] += exponent;
  }
  radicals_.clear();
  for (auto [base, exponent] : reduced) {
    Integer whole = floor_div(numerator(exponent), denominator(exponent));
    if (whole != 0) {
      coeff_ *= integer_power(base, whole.convert_to<long>());
      exponent -= Rational(whole);
    }
    if (exponent != 0) radicals_.emplace(base, exponent);
  }
}

Extended ExactScalar::to_extended() const {
  Extended value(coeff_);
  for (const auto& [base, exponent] : radicals_) value *= pow(Extended(base), Extended(exponent));
  if (pi_exponent_ != 0)
    value *= pow(boost::math::constants::pi<Extended>(), Extended(pi_exponent_));
  if (exp_argument_ != 0) value *= exp(Extended(exp_argument_));
  return value;
}

double ExactScalar::to_double() const {
  ScopedDigits digits(40);
  return to_extended().convert_to<double>();
}

std::string ExactScalar::to_string() const {
  std::ostringstream out;
  out << coeff_.str();
  for (const auto& [base, exponent] : radicals_) out << " * " << base.str() << "^(" << exponent.str() << ")";
  if (pi_exponent_ != 0) out << " * pi^(" << pi_exponent_.str() << ")";
  if (exp_argument_ != 0) out << " * exp(" << exp_argument_.str() << ")";
  return out.str();
}

}  // namespace cmx
