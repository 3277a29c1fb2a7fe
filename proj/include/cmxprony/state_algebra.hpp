#pragma once

#include "cmxprony/exact_scalar.hpp"
#include "cmxprony/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cmx {

/// scale · poly(x) · exp(−Σ a_d x_d² + Σ β_d x_d), a_d > 0.
///
/// The class is closed under −∇² + V for polynomial V: only `poly` changes.
struct GaussianPolyState {
  Polynomial poly{1};
  std::vector<Rational> quad;  // a_d
  std::vector<Rational> lin;   // β_d
  ExactScalar scale{1};

  /// Validates the invariants; `lin` defaults to zeros.
  static GaussianPolyState make(Polynomial poly, std::vector<Rational> quad, std::vector<Rational> lin = {});

  int dims() const { return poly.dims(); }
  void validate() const;
  bool operator==(const GaussianPolyState&) const = default;
};

/// H = −Σ_d ∂²/∂x_d² + V(x) with polynomial V.
struct PolynomialHamiltonian {
  Polynomial potential{1};

  int dims() const { return potential.dims(); }

  /// Heuristic lower-boundedness check of V on a [−10, 10]^dims grid.
  /// Returns a warning message when V keeps decreasing towards the grid edge.
  std::optional<std::string> boundedness_warning() const;
  bool operator==(const PolynomialHamiltonian&) const = default;
};

struct MomentSequence {
  std::vector<Rational> mu;  // μ_0 .. μ_J, μ_0 = 1
  std::string model_id;
  std::string state_id;

  int highest_order() const { return static_cast<int>(mu.size()) - 1; }
  std::vector<double> as_doubles() const;
};

struct ConnectedMoments {
  std::vector<Rational> values;  // I_1 .. I_J (values[0] = I_1)
  std::string model_id;
  std::string state_id;

  const Rational& at(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
  int highest_order() const { return static_cast<int>(values.size()); }
  std::vector<double> as_doubles() const;
};

inline constexpr int kDefaultMomentOrder = 13;

GaussianPolyState apply_hamiltonian(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state);

/// ∫ ψ1 ψ2 over all space, in closed form.
ExactScalar inner_product(const GaussianPolyState& left, const GaussianPolyState& right);

/// ∫ ψ_i ψ over all space for a batch of left states sharing one set of Gaussian
/// exponents; the integral tables are built once.
std::vector<ExactScalar> inner_products(const std::vector<GaussianPolyState>& lefts, const GaussianPolyState& right);

/// Rescales to unit norm. The polynomial is divided by its leading coefficient so that
/// c·φ and φ normalize to the same state for any c > 0.
GaussianPolyState normalize(const GaussianPolyState& state);

/// μ_j = ⟨φ|H^j|φ⟩ / ⟨φ|φ⟩ for j = 0..J, exact.
MomentSequence moments(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state, int highest_order,
                       std::string model_id = {}, std::string state_id = {});

/// ⟨H^i φ | H^j φ⟩ / ⟨φ|φ⟩ for a chosen split, used to exercise Hermiticity.
Rational split_moment(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state, int left_power,
                      int right_power);

/// Cumulant recurrence I_1 = μ_1, I_{j+1} = μ_{j+1} − Σ_{i<j} C(j,i) I_{i+1} μ_{j−i}.
ConnectedMoments connected_moments(const MomentSequence& moments);

}  // namespace cmx
