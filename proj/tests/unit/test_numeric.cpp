#include "cmxprony/errors.hpp"
#include "cmxprony/exact_scalar.hpp"
#include "cmxprony/numeric.hpp"
#include "cmxprony/polynomial.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cmx;

TEST_CASE("parse_rational accepts fractions, decimals and exponents") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("1.5e-2") == Rational(3, 200));
  CHECK(parse_rational("2E3") == Rational(2000));
  CHECK(parse_rational("010/08") == Rational(5, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
  CHECK_THROWS_AS(parse_rational(""), ConfigError);
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-5)) == "-5");
}

TEST_CASE("precision parsing") {
  CHECK(Precision::parse("double") == Precision::double_precision());
  CHECK(Precision::parse("ext:60") == Precision::extended(60));
  CHECK(Precision::parse("ext:60").to_string() == "ext:60");
  CHECK_THROWS_AS(Precision::parse("ext:5"), ConfigError);
  CHECK_THROWS_AS(Precision::parse("quad"), ConfigError);
}

TEST_CASE("format_number uses 12 significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(5.0) == "5");
}

TEST_CASE("ExactScalar folds radicals") {
  const ExactScalar root2 = ExactScalar::power(2, Rational(1, 2));
  CHECK((root2 * root2).as_rational() == Rational(2));
  CHECK(ExactScalar(Rational(9, 4)).sqrt().as_rational() == Rational(3, 2));
  CHECK_FALSE(ExactScalar(Rational(2)).sqrt().as_rational().has_value());
  CHECK(ExactScalar(Rational(2)).sqrt() == root2);
  CHECK(ExactScalar::power(Rational(1, 2), Rational(1, 2)) == root2.inverse());
  CHECK_THROWS_AS(ExactScalar(Rational(-1)).sqrt(), NonNormalizable);

  const ExactScalar value = ExactScalar::pi_power(Rational(1, 2)) * ExactScalar::exp_of(Rational(1, 4)) * Rational(3);
  CHECK(value.to_double() == doctest::Approx(3 * std::sqrt(std::numbers::pi) * std::exp(0.25)).epsilon(1e-15));
  CHECK((value / value).as_rational() == Rational(1));
}

TEST_CASE("Polynomial arithmetic") {
  const Polynomial x = Polynomial::monomial(1, {1, 0});
  const Polynomial one = Polynomial::constant(1, 1);
  const Polynomial p = (x + one) * (x - one);
  CHECK(p == Polynomial::from_terms(1, {{1, {2}}, {-1, {0}}}));
  CHECK(p.degree(0) == 2);
  CHECK(p.derivative(0) == Polynomial::monomial(1, {1, 0}, 2));
  CHECK(p.has_parity(0, 0));
  CHECK_FALSE((p + x).has_parity(0, 0));
  CHECK((p - p).is_zero());
  const double at[] = {3.0};
  CHECK(p.evaluate(at) == 8.0);
  CHECK_THROWS_AS(Polynomial::from_terms(1, {{1, {1, 2}}}), DimensionMismatch);
  CHECK_THROWS_AS(p + Polynomial::constant(2, 1), DimensionMismatch);

  const Polynomial xy = Polynomial::from_terms(2, {{Rational(1, 2), {1, 2}}});
  CHECK(xy.derivative(1) == Polynomial::from_terms(2, {{1, {1, 1}}}));
  CHECK(xy.shifted(0, 2) == Polynomial::from_terms(2, {{Rational(1, 2), {3, 2}}}));
}

TEST_CASE("Hermite polynomials") {
  CHECK(hermite_polynomial(0) == Polynomial::constant(1, 1));
  CHECK(hermite_polynomial(2) == Polynomial::from_terms(1, {{4, {2}}, {-2, {0}}}));
  CHECK(hermite_polynomial(3) == Polynomial::from_terms(1, {{8, {3}}, {-12, {1}}}));
}
