#pragma once

#include "cmxprony/numeric.hpp"

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cmx {

inline constexpr int kMaxDims = 2;

/// Per-dimension exponents; entries beyond the polynomial's dimension stay zero.
using Exponents = std::array<int, kMaxDims>;

/// Sparse multivariate polynomial with exact rational coefficients in 1 or 2 variables.
class Polynomial {
 public:
  explicit Polynomial(int dims = 1);

  static Polynomial constant(int dims, const Rational& value);
  static Polynomial monomial(int dims, const Exponents& exponents, const Rational& coeff = 1);
  /// Builds from (coefficient, exponent tuple) pairs; tuple length must equal dims.
  static Polynomial from_terms(int dims, const std::vector<std::pair<Rational, std::vector<int>>>& terms);

  int dims() const { return dims_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Highest exponent of variable `dim` over all terms (0 for the zero polynomial).
  int degree(int dim) const;
  Rational coefficient(const Exponents& exponents) const;

  void add_term(const Exponents& exponents, const Rational& coeff);

  Polynomial derivative(int dim) const;
  /// Multiplies by x_dim^power.
  Polynomial shifted(int dim, int power = 1) const;

  /// True when every term has an even (parity 0) or odd (parity 1) exponent in `dim`.
  bool has_parity(int dim, int parity) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& factor);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& other) const = default;

  double evaluate(std::span<const double> point) const;
  std::string to_string() const;

 private:
  void check_dims(const Polynomial& other) const;

  int dims_;
  std::map<Exponents, Rational> terms_;
};

/// Physicists' Hermite polynomial H_n with integer coefficients.
Polynomial hermite_polynomial(int n);

}  // namespace cmx
