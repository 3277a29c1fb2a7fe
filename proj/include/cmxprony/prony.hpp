#pragma once

#include "cmxprony/errors.hpp"
#include "cmxprony/numeric.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cmx {

/// The 2N equations  F_k = Σ_{n=1}^{N} A_n b_n^{k+s},  k = 1..2N.
struct PronyProblem {
  std::vector<double> values;                 // F_1 .. F_2N
  std::optional<std::vector<Rational>> exact;  // same data, when known exactly
  int order = 0;                              // N
  int shift = 0;                              // s

  static PronyProblem from_values(std::vector<double> values, int shift);
  static PronyProblem from_rationals(std::vector<Rational> values, int shift);

  /// Throws Error unless values.size() == 2·order and order ≥ 1.
  void validate() const;
};

enum class PronyMethod { LinearPolynomial, SecularPencil };

std::string to_string(PronyMethod method);

struct PronySolution {
  std::vector<std::complex<double>> exponents;   // b_n, ascending real part, conjugates adjacent
  std::vector<std::complex<double>> amplitudes;  // A_n
  std::vector<double> polynomial;                // p_0 .. p_N (p_N = 1); linear route only
  double residual = 0.0;                         // max_k |F_k − Σ A b^{k+s}| / max(1, |F_k|)
  double hankel_condition = 0.0;
  double amplitude_condition = 0.0;
  PronyMethod method = PronyMethod::SecularPencil;
  Precision precision = Precision::double_precision();

  int order() const { return static_cast<int>(exponents.size()); }
  bool flagged() const { return !(residual <= kResidualFlag); }

  static constexpr double kResidualFlag = 1e-6;
};

struct SolveOptions {
  Precision precision = Precision::double_precision();
  /// Condition limit for double precision; extended runs scale it by ε_double/ε_ext.
  double condition_limit = 1e12;
  double repeated_root_tolerance = 1e-8;
};

/// Hankel blocks: base(i,j) = F_{i+j}, shifted(i,j) = F_{i+j+1}, rhs(i) = −F_{i+N}
/// with i = 1..N, j = 0..N−1.
struct HankelBlocks {
  Eigen::MatrixXd base;
  Eigen::MatrixXd shifted;
  Eigen::VectorXd rhs;
};

HankelBlocks build_hankel(const PronyProblem& problem);

/// Classic route: solve the Hankel system for p_0..p_{N−1}, take roots of p via
/// companion-matrix eigenvalues, then fit the amplitudes.
PronySolution solve_linear_prony(const PronyProblem& problem, const SolveOptions& options = {});

/// Pencil route: b_n are the roots of det(F_shifted − b F_base), computed as the
/// eigenvalues of F_base⁻¹ F_shifted.
PronySolution solve_secular(const PronyProblem& problem, const SolveOptions& options = {});

PronySolution solve(const PronyProblem& problem, PronyMethod method, const SolveOptions& options = {});

struct AmplitudeFit {
  std::vector<std::complex<double>> amplitudes;
  double residual = 0.0;
  double condition = 0.0;
};

/// Least squares over all 2N equations of V(k, n) = b_n^{k+s}.
AmplitudeFit solve_amplitudes(const PronyProblem& problem, std::span<const std::complex<double>> exponents,
                              const SolveOptions& options = {});

enum class LimitBehavior { Converges, DivergesMinus, DivergesPlus, Oscillates };

std::string to_string(LimitBehavior behavior);

struct RootDiagnostics {
  bool all_real = true;
  bool all_positive = true;
  bool oscillatory = false;  // a complex pair is present
  std::vector<double> negative_real_roots;
  LimitBehavior limit_behavior = LimitBehavior::Converges;
};

/// Real roots: |Im b| ≤ 1e−8 (1 + |Re b|). The t → ∞ limit of Σ A_n e^{−b_n t} is set
/// by the root with the most negative real part when any Re b ≤ 0.
RootDiagnostics classify_roots(const PronySolution& solution);

inline constexpr double kRealRootTolerance = 1e-8;

}  // namespace cmx
