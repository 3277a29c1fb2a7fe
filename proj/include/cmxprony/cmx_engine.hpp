#pragma once

#include "cmxprony/prony.hpp"
#include "cmxprony/state_algebra.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace cmx {

struct EngineOptions {
  Precision precision = Precision::extended(50);
  PronyMethod method = PronyMethod::SecularPencil;
  double condition_limit = 1e12;
  /// Also run the other Prony route and record a warning when the exponents disagree.
  bool cross_check = false;
};

/// Z_N(t) = Σ_j A_j e^{−t W_j}, matched to μ_0..μ_{2N−1}.
struct ZnApproximant {
  int order = 0;
  std::vector<double> amplitudes;  // A_j ≈ |⟨φ|ψ_j⟩|²
  std::vector<double> exponents;   // W_j ≈ E_j, ascending
  std::string provenance;
  PronySolution solution;
  std::vector<std::string> warnings;
};

/// Leading principal minors k = 1..N of the connected-moment Hankel blocks.
struct HadamardMinors {
  std::vector<Rational> base;     // det[I_{i+j}]_{i,j=1..k}
  std::vector<Rational> shifted;  // det[I_{i+j+1}]_{i,j=1..k}
};

/// E^(N)(t) = A_0 + Σ_n A_n e^{−b_n t}, matched to I_1..I_{2N+1}.
struct CmxApproximant {
  int order = 0;
  double ground_energy = 0.0;  // A_0 = I_1 − Σ A_n
  std::vector<std::complex<double>> amplitudes;
  std::vector<std::complex<double>> exponents;
  RootDiagnostics diagnostics;
  HadamardMinors hadamard;
  PronySolution solution;
  std::string provenance;
  std::vector<std::string> warnings;
};

ZnApproximant zn_from_moments(const MomentSequence& moments, int order, const EngineOptions& options = {});
CmxApproximant cmx_from_connected(const ConnectedMoments& connected, int order, const EngineOptions& options = {});

HadamardMinors hadamard_minors(const ConnectedMoments& connected, int order);

double eval_EN(const CmxApproximant& approximant, double t);
std::complex<double> eval_ZN(const ZnApproximant& approximant, std::complex<double> t);
/// U^(N)(t) = −Z_N′(t)/Z_N(t); throws PoleEncountered where Z_N vanishes.
double eval_UN(const ZnApproximant& approximant, double t);
/// |Z_N(iτ)|².
double correlation_squared(const ZnApproximant& approximant, double tau);

/// Taylor coefficients c_j (of t^j) of the fitted ansatz, j = 0..count−1.
std::vector<std::complex<double>> maclaurin_coefficients(const ZnApproximant& approximant, int count);
std::vector<std::complex<double>> maclaurin_coefficients(const CmxApproximant& approximant, int count);

/// One row of an order scan: E^(N) and Z_{N+1}, both built from μ_0..μ_{2N+1}.
struct ScanRow {
  int order = 0;
  int highest_moment = 0;
  std::optional<CmxApproximant> cmx;
  std::optional<ZnApproximant> zn;
  std::string cmx_error;
  std::string zn_error;
};

std::vector<ScanRow> order_scan(const MomentSequence& moments, int max_order, const EngineOptions& options = {});

}  // namespace cmx
