#include "cmxprony/errors.hpp"
#include "cmxprony/catalog.hpp"
#include "cmxprony/series.hpp"
#include "cmxprony/state_algebra.hpp"

#include "../frozen.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cmx;

namespace {

GaussianPolyState gaussian(Rational a, Polynomial poly = Polynomial::constant(1, 1)) {
  return GaussianPolyState::make(std::move(poly), {a});
}

Polynomial terms(std::vector<std::pair<Rational, std::vector<int>>> t) { return Polynomial::from_terms(1, t); }

}  // namespace

TEST_CASE("apply_hamiltonian examples") {
  const auto ho = harmonic_oscillator();
  CHECK(apply_hamiltonian(ho, gaussian(Rational(1, 2))).poly == Polynomial::constant(1, 1));
  CHECK(apply_hamiltonian(ho, gaussian(1)).poly == terms({{2, {0}}, {-3, {2}}}));

  const PolynomialHamiltonian free{Polynomial(1)};
  CHECK(apply_hamiltonian(free, gaussian(Rational(1, 2), terms({{1, {1}}}))).poly == terms({{3, {1}}, {-1, {3}}}));

  auto applied = apply_hamiltonian(ho, gaussian(1));
  CHECK(applied.quad == std::vector<Rational>{1});
  CHECK_THROWS_AS(apply_hamiltonian(coupled_oscillator(Rational(1, 2)), gaussian(1)), DimensionMismatch);
}

TEST_CASE("apply_hamiltonian is linear and handles displaced Gaussians") {
  const auto h = double_well();
  const auto a = gaussian(Rational(3, 5), terms({{1, {2}}, {2, {0}}}));
  const auto b = gaussian(Rational(3, 5), terms({{-4, {1}}, {Rational(1, 3), {3}}}));
  const auto sum = gaussian(Rational(3, 5), a.poly + b.poly * Rational(7));
  CHECK(apply_hamiltonian(h, sum).poly == apply_hamiltonian(h, a).poly + apply_hamiltonian(h, b).poly * Rational(7));

  // −d²/dx² e^{−x²+2x} = (2 − (2 − 2x)²) e^{−x²+2x}
  auto shifted = GaussianPolyState::make(Polynomial::constant(1, 1), {1}, {2});
  CHECK(apply_hamiltonian(PolynomialHamiltonian{Polynomial(1)}, shifted).poly ==
        terms({{-2, {0}}, {8, {1}}, {-4, {2}}}));
}

TEST_CASE("inner_product examples") {
  const ExactScalar root_pi_half = ExactScalar::pi_power(Rational(1, 2)) * ExactScalar::power(2, Rational(-1, 2));
  CHECK(inner_product(gaussian(1), gaussian(1)) == root_pi_half);
  CHECK(inner_product(gaussian(1, terms({{1, {1}}})), gaussian(1)).is_zero());
  CHECK(inner_product(gaussian(1, terms({{1, {2}}})), gaussian(1, terms({{1, {2}}}))) ==
        root_pi_half * Rational(3, 16));
  CHECK(inner_product(gaussian(1), gaussian(1)).to_double() ==
        doctest::Approx(std::sqrt(std::numbers::pi / 2)).epsilon(1e-15));
}

TEST_CASE("inner_product of displaced Gaussians keeps the exp factor") {
  // ∫ e^{−2x² + 4x} dx = sqrt(π/2) e²
  auto s = GaussianPolyState::make(Polynomial::constant(1, 1), {1}, {2});
  const ExactScalar value = inner_product(s, s);
  CHECK(value.exp_argument() == Rational(2));
  CHECK(value.to_double() == doctest::Approx(std::sqrt(std::numbers::pi / 2) * std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("Hamiltonian is symmetric on the state class") {
  const auto h = quartic_oscillator();
  const auto a = gaussian(Rational(1, 2), terms({{1, {2}}, {-1, {1}}}));
  const auto b = gaussian(Rational(3, 4), terms({{2, {3}}, {1, {0}}}));
  CHECK(inner_product(apply_hamiltonian(h, a), b) == inner_product(a, apply_hamiltonian(h, b)));

  const auto trial = quadratic_trial();
  const auto ho = harmonic_oscillator();
  CHECK(split_moment(ho, trial, 1, 4) == split_moment(ho, trial, 2, 3));
  CHECK(split_moment(ho, trial, 0, 5) == split_moment(ho, trial, 3, 2));
}

TEST_CASE("normalize") {
  const auto n = normalize(gaussian(1));
  CHECK(n.scale == ExactScalar::power(2, Rational(1, 4)) * ExactScalar::pi_power(Rational(-1, 4)));
  CHECK(inner_product(n, n).as_rational() == Rational(1));
  CHECK(normalize(n) == n);

  auto scaled = gaussian(1, Polynomial::constant(1, Rational(7, 3)));
  CHECK(normalize(scaled) == n);

  CHECK_THROWS_AS(gaussian(0), NonNormalizable);
  CHECK_THROWS_AS(gaussian(-1), NonNormalizable);
  CHECK_THROWS_AS(GaussianPolyState::make(Polynomial(1), {1}), Error);
}

TEST_CASE("moments examples") {
  const auto ho = harmonic_oscillator();
  const auto ground = moments(ho, gaussian(Rational(1, 2)), 6);
  for (const auto& m : ground.mu) CHECK(m == Rational(1));

  CHECK(moments(ho, gaussian(1), 1).mu[1] == Rational(5, 4));

  const auto quad = moments(ho, quadratic_trial(), 8);
  REQUIRE(quad.mu.size() == 9);
  for (std::size_t j = 0; j < frozen::kQuadraticMu.size(); ++j)
    CHECK(quad.mu[j] == parse_rational(frozen::kQuadraticMu[j]));
}

TEST_CASE("moments are scale invariant") {
  const auto ho = quartic_oscillator();
  const auto a = moments(ho, gaussian(1), 7);
  const auto b = moments(ho, gaussian(1, Polynomial::constant(1, Rational(5, 2))), 7);
  CHECK(a.mu == b.mu);
}

TEST_CASE("moments in two dimensions") {
  const auto h = coupled_oscillator(Rational(1, 2));
  const auto trial = gaussian_trial(2);
  const auto mu = moments(h, trial, 3);
  // ⟨−∇²⟩ = 2, ⟨x²+y²⟩ = 1/2, ⟨x²y²⟩/2 = 1/32
  CHECK(mu.mu[1] == Rational(2) + Rational(1, 2) + Rational(1, 32));
}

TEST_CASE("connected_moments examples") {
  MomentSequence mu{{1, 2, 7, 30}, {}, {}};
  const auto I = connected_moments(mu);
  CHECK(I.at(1) == 2);
  CHECK(I.at(2) == Rational(7) - 4);

  MomentSequence eigen{{1, 3, 9, 27, 81}, {}, {}};
  const auto flat = connected_moments(eigen);
  CHECK(flat.at(1) == 3);
  for (int k = 2; k <= 4; ++k) CHECK(flat.at(k) == 0);

  const auto quad = connected_moments(moments(harmonic_oscillator(), quadratic_trial(), 8));
  for (std::size_t k = 0; k < frozen::kQuadraticI.size(); ++k)
    CHECK(quad.values[k] == parse_rational(frozen::kQuadraticI[k]));

  CHECK_THROWS_AS(connected_moments(MomentSequence{{2, 1}, {}, {}}), Error);
}

TEST_CASE("connected moments are the series coefficients of -Z'/Z") {
  const auto mu = moments(double_well(), displaced_gaussian_trial(), 9);
  const auto I = connected_moments(mu);
  std::vector<Rational> z;
  Rational factorial = 1;
  for (int j = 0; j <= mu.highest_order(); ++j) {
    if (j > 0) factorial *= j;
    z.push_back((j % 2 ? -1 : 1) * mu.mu[static_cast<std::size_t>(j)] / factorial);
  }
  const PowerSeries<Rational> Z(z);
  const auto E = (Z.derivative() / Z.truncated(Z.size() - 1)) * Rational(-1);
  factorial = 1;
  for (std::size_t j = 0; j < E.size(); ++j) {
    if (j > 0) factorial *= static_cast<long>(j);
    CHECK(E[j] * factorial * (j % 2 ? -1 : 1) == I.values[j]);
  }
}

TEST_CASE("recurrence inversion recovers the moments") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> digit(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> mu{1};
    for (int j = 1; j <= 8; ++j) mu.push_back(Rational(digit(rng), 1 + std::abs(digit(rng))));
    const auto I = connected_moments(MomentSequence{mu, {}, {}});
    // μ_{j+1} = Σ_{i=0}^{j} C(j,i) I_{i+1} μ_{j−i}
    for (int j = 0; j + 1 < static_cast<int>(mu.size()); ++j) {
      Rational sum = 0;
      Rational binom = 1;
      for (int i = 0; i <= j; ++i) {
        sum += binom * I.at(i + 1) * mu[static_cast<std::size_t>(j - i)];
        binom = binom * (j - i) / (i + 1);
      }
      CHECK(sum == mu[static_cast<std::size_t>(j + 1)]);
    }
  }
}

TEST_CASE("boundedness warning") {
  CHECK_FALSE(harmonic_oscillator().boundedness_warning().has_value());
  const PolynomialHamiltonian inverted{Polynomial::from_terms(1, {{-1, {4}}, {1, {2}}})};
  CHECK(inverted.boundedness_warning().has_value());
}
