#include "cmxprony/catalog.hpp"

#include "cmxprony/errors.hpp"

namespace cmx {

PolynomialHamiltonian harmonic_oscillator() {
  return {Polynomial::monomial(1, {2, 0})};
}

PolynomialHamiltonian quartic_oscillator() {
  return {Polynomial::monomial(1, {4, 0})};
}

PolynomialHamiltonian coupled_oscillator(const Rational& coupling) {
  Polynomial v(2);
  v.add_term({2, 0}, 1);
  v.add_term({0, 2}, 1);
  v.add_term({2, 2}, coupling);
  return {v};
}

PolynomialHamiltonian double_well() {
  Polynomial v(1);
  v.add_term({4, 0}, 1);
  v.add_term({2, 0}, -2);
  v.add_term({0, 0}, 1);
  return {v};
}

GaussianPolyState quadratic_trial() {
  Polynomial poly(1);
  poly.add_term({2, 0}, 1);
  poly.add_term({0, 0}, Rational(-1, 2));
  return normalize(GaussianPolyState::make(poly, {Rational(2, 5)}));
}

GaussianPolyState gaussian_trial(int dims) {
  return normalize(GaussianPolyState::make(Polynomial::constant(dims, 1),
                                           std::vector<Rational>(static_cast<std::size_t>(dims), Rational(1))));
}

GaussianPolyState displaced_gaussian_trial() {
  return normalize(GaussianPolyState::make(Polynomial::constant(1, 1), {Rational(1)}, {Rational(2)}));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> list;
    auto ground = GaussianPolyState::make(Polynomial::constant(1, 1), {Rational(1, 2)});
    list.push_back({"ho-quadratic", "harmonic oscillator, trial (x^2 - 1/2) exp(-2x^2/5)", harmonic_oscillator(),
                    quadratic_trial(), ExactReference::GeneratingFunctionHO, 64, 256});
    list.push_back({"ho-gauss", "harmonic oscillator, trial (2/pi)^(1/4) exp(-x^2)", harmonic_oscillator(),
                    gaussian_trial(1), ExactReference::CorrelationHO, 64, 256});
    list.push_back({"ho-ground", "harmonic oscillator, ground eigenstate exp(-x^2/2)", harmonic_oscillator(),
                    normalize(ground), ExactReference::None, 32, 256});
    list.push_back({"quartic-gauss", "quartic oscillator -d2/dx2 + x^4, trial (2/pi)^(1/4) exp(-x^2)",
                    quartic_oscillator(), gaussian_trial(1), ExactReference::None, 64, 256});
    list.push_back({"coupled-2d", "2D oscillator x^2 + y^2 + x^2 y^2 / 2, trial (2/pi)^(1/2) exp(-x^2 - y^2)",
                    coupled_oscillator(Rational(1, 2)), gaussian_trial(2), ExactReference::None, 24, 48});
    list.push_back({"dw-well", "double well (x^2 - 1)^2, trial (2/pi)^(1/4) exp(-(x - 1)^2)", double_well(),
                    displaced_gaussian_trial(), ExactReference::None, 96, 256});
    list.push_back({"dw-barrier", "double well (x^2 - 1)^2, trial (2/pi)^(1/4) exp(-x^2)", double_well(),
                    gaussian_trial(1), ExactReference::None, 64, 256});
    return list;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& entry : catalog())
    if (entry.name == name) return entry;
  std::string known;
  for (const auto& entry : catalog()) known += (known.empty() ? "" : ", ") + entry.name;
  throw ConfigError("unknown model '" + std::string(name) + "' (known: " + known + ")", 0, "model");
}

}  // namespace cmx
