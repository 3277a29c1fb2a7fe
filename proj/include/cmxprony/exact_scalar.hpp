#pragma once

#include "cmxprony/numeric.hpp"

#include <map>
#include <optional>
#include <string>

namespace cmx {

/// Closed-form value  c · Π bᵢ^eᵢ · π^p · exp(x)  with rational c, bᵢ > 0, eᵢ, p and x.
///
/// Gaussian integrals over polynomial × Gaussian states land in this class, and so do
/// their square roots (normalization constants). Radical bases are stored with
/// exponents reduced into (0, 1); integer parts are folded into the coefficient, so a
/// value is rational exactly when no radical, π or exp factor survives.
class ExactScalar {
 public:
  ExactScalar() : coeff_(1) {}
  ExactScalar(Rational coeff);  // NOLINT(google-explicit-constructor)
  ExactScalar(long coeff) : ExactScalar(Rational(coeff)) {}  // NOLINT

  static ExactScalar power(const Rational& base, const Rational& exponent);
  static ExactScalar pi_power(const Rational& exponent);
  static ExactScalar exp_of(const Rational& argument);

  const Rational& coefficient() const { return coeff_; }
  const std::map<Rational, Rational>& radicals() const { return radicals_; }
  const Rational& pi_exponent() const { return pi_exponent_; }
  const Rational& exp_argument() const { return exp_argument_; }

  bool is_zero() const { return coeff_ == 0; }
  std::optional<Rational> as_rational() const;

  /// Principal square root; throws NonNormalizable for negative values.
  ExactScalar sqrt() const;
  ExactScalar inverse() const;

  ExactScalar& operator*=(const ExactScalar& other);
  ExactScalar& operator/=(const ExactScalar& other) { return *this *= other.inverse(); }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  ExactScalar operator-() const;

  bool operator==(const ExactScalar& other) const = default;

  /// Evaluated at the current Extended working precision.
  Extended to_extended() const;
  double to_double() const;

  /// e.g. "3/16 * 2^(-1/2) * pi^(1/2)".
  std::string to_string() const;

 private:
  void canonicalize();

  Rational coeff_;
  std::map<Rational, Rational> radicals_;
  Rational pi_exponent_;
  Rational exp_argument_;
};

}  // namespace cmx
