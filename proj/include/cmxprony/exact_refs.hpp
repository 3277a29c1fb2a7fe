#pragma once

#include "cmxprony/state_algebra.hpp"

#include <array>
#include <complex>
#include <vector>

namespace cmx {

/// Closed-form E(t) = −Z′/Z for the harmonic oscillator with trial (x² − 1/2) e^{−2x²/5}:
/// (121u³ + 189199u² + 8180919u + 6561) / ((81 − u)(121u² + 20198u + 81)),  u = e^{−4t}.
double exact_E_ho(double t);

/// Poles of the closed-form E(t) in the u = e^{−4t} plane, ascending.
std::array<double, 3> exact_E_ho_poles();

/// |C(τ)|² = 4√2 / √(41 − 9 cos 4τ) for the oscillator with trial (2/π)^{1/4} e^{−x²}.
double exact_C2_ho(double tau);

struct SpectralReference {
  int basis_size = 0;              // oscillator functions per dimension
  std::vector<double> energies;    // ascending
  std::vector<double> overlaps;    // |⟨φ|ψ_j⟩|² / ⟨φ|φ⟩
  double convergence_gap = 0.0;    // vs. the M/2 truncation
  bool converged = false;

  double captured_weight() const;
};

/// Dense diagonalization in the oscillator number basis of −∇² + |x|², using exact
/// banded x^k matrix elements and exact trial-state projections. Starts at
/// `basis_size` functions per dimension and doubles until the lowest levels and their
/// overlaps change by less than `tolerance`; throws Unconverged past `max_basis_size`.
SpectralReference diagonalize(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& trial,
                              int basis_size, double tolerance, int max_basis_size = 256);

/// Diagonalization at exactly `basis_size` functions per dimension (no convergence loop).
SpectralReference diagonalize_fixed(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& trial,
                                    int basis_size);

/// v^T M^j v for j = 0..highest in the truncated basis, by repeated products (no eigensolve).
std::vector<double> basis_moments(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& trial,
                                  int basis_size, int highest);

struct RitzResult {
  std::vector<double> values;    // ascending Ritz values
  std::vector<double> overlaps;  // |⟨φ|φ_j⟩|² for S-normalized Ritz vectors
};

/// Rayleigh–Ritz in span{φ, Hφ, …, H^{N−1}φ}: Gram matrix S_ij = μ_{i+j}, Hamiltonian
/// K_ij = μ_{i+j+1}, solved as a symmetric-definite pencil through a Cholesky factor of S.
RitzResult rrk_oracle(const MomentSequence& moments, int order, const Precision& precision = Precision::extended(50));

struct ReferenceValues {
  std::complex<double> Z;
  double E = 0.0;
  double C2 = 0.0;
};

std::complex<double> reference_Z(const SpectralReference& reference, std::complex<double> t);
double reference_E(const SpectralReference& reference, double t);
double reference_C2(const SpectralReference& reference, double tau);
/// Z(t), E(t) at real t and |C|² at τ = t.
ReferenceValues reference_Z_E_C(const SpectralReference& reference, double t);

/// Σ_j w_j E_j^k for k = 0..highest, normalized by the captured weight.
std::vector<double> reference_moments(const SpectralReference& reference, int highest);

}  // namespace cmx
