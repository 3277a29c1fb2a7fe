#pragma once

#include "cmxprony/state_algebra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cmx {

/// Closed-form references available for a catalog entry.
enum class ExactReference { None, GeneratingFunctionHO, CorrelationHO };

struct CatalogEntry {
  std::string name;
  std::string description;
  PolynomialHamiltonian hamiltonian;
  GaussianPolyState trial;
  ExactReference exact = ExactReference::None;
  /// Starting oscillator-basis size per dimension for the diagonalization oracle.
  int basis_size = 64;
  int max_basis_size = 256;
};

PolynomialHamiltonian harmonic_oscillator();             // −d²/dx² + x²
PolynomialHamiltonian quartic_oscillator();              // −d²/dx² + x⁴
PolynomialHamiltonian coupled_oscillator(const Rational& coupling);  // −∇² + x² + y² + λ x²y²
PolynomialHamiltonian double_well();                     // −d²/dx² + (x² − 1)²

/// (x² − 1/2) exp(−2x²/5), normalized.
GaussianPolyState quadratic_trial();
/// exp(−Σ x_d²), normalized.
GaussianPolyState gaussian_trial(int dims = 1);
/// exp(−(x − 1)²) = e^{−1} exp(−x² + 2x), normalized.
GaussianPolyState displaced_gaussian_trial();

const std::vector<CatalogEntry>& catalog();

/// Throws ConfigError listing the known names when `name` is unknown.
const CatalogEntry& catalog_entry(std::string_view name);

}  // namespace cmx
