#include "cmxprony/cmx_engine.hpp"

#include "cmxprony/errors.hpp"
#include "cmxprony/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cmx {

namespace {

SolveOptions solve_options(const EngineOptions& options) {
  SolveOptions solve;
  solve.precision = options.precision;
  solve.condition_limit = options.condition_limit;
  return solve;
}

PronyMethod other(PronyMethod method) {
  return method == PronyMethod::SecularPencil ? PronyMethod::LinearPolynomial : PronyMethod::SecularPencil;
}

void cross_check(const PronyProblem& problem, const PronySolution& primary, const EngineOptions& options,
                 std::vector<std::string>& warnings) {
  if (!options.cross_check) return;
  try {
    const PronySolution second = solve(problem, other(primary.method), solve_options(options));
    for (std::size_t n = 0; n < primary.exponents.size(); ++n) {
      const auto& a = primary.exponents[n];
      const auto& b = second.exponents[n];
      const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
      if (std::abs(a - b) > 1e-8 * scale) {
        warnings.push_back("cross-check: " + to_string(second.method) + " exponent " + std::to_string(n) +
                           " differs by " + format_number(std::abs(a - b) / scale, 3) + " relative");
      }
    }
  } catch (const Error& e) {
    warnings.push_back(std::string("cross-check failed: ") + e.what());
  }
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

}  // namespace

ZnApproximant zn_from_moments(const MomentSequence& moments, int order, const EngineOptions& options) {
  if (order < 1) throw Error("zn_from_moments: order must be at least 1");
  if (moments.highest_order() < 2 * order - 1)
    throw Error("zn_from_moments: order " + std::to_string(order) + " needs moments up to mu_" +
                std::to_string(2 * order - 1));
  if (moments.mu[0] != 1) throw Error("zn_from_moments: moment sequence must be normalized (mu_0 = 1)");

  // F_k = μ_{k−1}, s = −1
  std::vector<Rational> data(moments.mu.begin(), moments.mu.begin() + 2 * order);
  const PronyProblem problem = PronyProblem::from_rationals(std::move(data), -1);

  ZnApproximant z;
  z.order = order;
  z.provenance = moments.model_id + "/" + moments.state_id;
  z.solution = solve(problem, options.method, solve_options(options));
  cross_check(problem, z.solution, options, z.warnings);

  for (std::size_t j = 0; j < z.solution.exponents.size(); ++j) {
    const auto& w = z.solution.exponents[j];
    const auto& a = z.solution.amplitudes[j];
    if (std::abs(w.imag()) > kRealRootTolerance * (1.0 + std::abs(w.real())))
      z.warnings.push_back("complex exponent W_" + std::to_string(j) + " = " + format_number(w.real()) + " + " +
                           format_number(w.imag()) + "i (moment Hankel matrix not positive definite?)");
    if (std::abs(a.imag()) > 1e-9)
      z.warnings.push_back("amplitude A_" + std::to_string(j) + " has imaginary part " + format_number(a.imag()));
    if (a.real() < -1e-9)
      z.warnings.push_back("negative amplitude A_" + std::to_string(j) + " = " + format_number(a.real()));
    z.exponents.push_back(w.real());
    z.amplitudes.push_back(a.real());
  }
  if (z.solution.flagged())
    z.warnings.push_back("Prony residual " + format_number(z.solution.residual, 3) + " exceeds 1e-6");
  return z;
}

HadamardMinors hadamard_minors(const ConnectedMoments& connected, int order) {
  if (connected.highest_order() < 2 * order + 1)
    throw Error("hadamard_minors: order " + std::to_string(order) + " needs I_1..I_" + std::to_string(2 * order + 1));
  HadamardMinors minors;
  for (int k = 1; k <= order; ++k) {
    std::vector<std::vector<Rational>> base(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
    auto shifted = base;
    for (int i = 1; i <= k; ++i) {
      for (int j = 1; j <= k; ++j) {
        base[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = connected.at(i + j);
        shifted[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = connected.at(i + j + 1);
      }
    }
    minors.base.push_back(determinant(std::move(base)));
    minors.shifted.push_back(determinant(std::move(shifted)));
  }
  return minors;
}

CmxApproximant cmx_from_connected(const ConnectedMoments& connected, int order, const EngineOptions& options) {
  if (order < 1) throw Error("cmx_from_connected: order must be at least 1");
  if (connected.highest_order() < 2 * order + 1)
    throw Error("cmx_from_connected: order " + std::to_string(order) + " needs I_1..I_" +
                std::to_string(2 * order + 1));

  // F_k = I_{k+1}, k = 1..2N, s = 0
  std::vector<Rational> data;
  for (int k = 1; k <= 2 * order; ++k) data.push_back(connected.at(k + 1));
  const PronyProblem problem = PronyProblem::from_rationals(std::move(data), 0);

  CmxApproximant c;
  c.order = order;
  c.provenance = connected.model_id + "/" + connected.state_id;
  c.hadamard = hadamard_minors(connected, order);
  c.solution = solve(problem, options.method, solve_options(options));
  cross_check(problem, c.solution, options, c.warnings);
  c.exponents = c.solution.exponents;
  c.amplitudes = c.solution.amplitudes;

  std::complex<double> total = std::accumulate(c.amplitudes.begin(), c.amplitudes.end(), std::complex<double>(0.0));
  c.ground_energy = to_double(connected.at(1)) - total.real();
  c.diagnostics = classify_roots(c.solution);
  if (c.solution.flagged())
    c.warnings.push_back("Prony residual " + format_number(c.solution.residual, 3) + " exceeds 1e-6");
  return c;
}

double eval_EN(const CmxApproximant& approximant, double t) {
  std::complex<double> sum(0.0);
  for (std::size_t n = 0; n < approximant.exponents.size(); ++n)
    sum += approximant.amplitudes[n] * std::exp(-approximant.exponents[n] * t);
  const double value = approximant.ground_energy + sum.real();
  if (std::abs(sum.imag()) > 1e-9 * (1.0 + std::abs(value)))
    throw Error("eval_EN: imaginary residue " + format_number(sum.imag(), 3) + " at t = " + format_number(t) +
                " (amplitudes are not conjugate-paired)");
  return value;
}

std::complex<double> eval_ZN(const ZnApproximant& approximant, std::complex<double> t) {
  std::complex<double> sum(0.0);
  for (std::size_t j = 0; j < approximant.exponents.size(); ++j)
    sum += approximant.amplitudes[j] * std::exp(-t * approximant.exponents[j]);
  return sum;
}

double eval_UN(const ZnApproximant& approximant, double t) {
  if (approximant.exponents.empty()) throw Error("eval_UN: empty approximant");
  // Factor out e^{−t W_min} so large t does not underflow.
  const double w_min = *std::min_element(approximant.exponents.begin(), approximant.exponents.end());
  double z = 0.0;
  double dz = 0.0;
  double weight = 0.0;
  for (std::size_t j = 0; j < approximant.exponents.size(); ++j) {
    const double w = approximant.exponents[j];
    const double term = approximant.amplitudes[j] * std::exp(-t * (w - w_min));
    z += term;
    dz += w * term;
    weight += std::abs(approximant.amplitudes[j]);
  }
  if (std::abs(z) < 1e-14 * std::max(1.0, weight))
    throw PoleEncountered("eval_UN: Z_N vanishes at t = " + format_number(t));
  return dz / z;
}

double correlation_squared(const ZnApproximant& approximant, double tau) {
  return std::norm(eval_ZN(approximant, std::complex<double>(0.0, tau)));
}

std::vector<std::complex<double>> maclaurin_coefficients(const ZnApproximant& approximant, int count) {
  using Series = PowerSeries<std::complex<double>>;
  const auto length = static_cast<std::size_t>(count);
  Series sum = Series::constant(0.0, length);
  for (std::size_t j = 0; j < approximant.exponents.size(); ++j)
    sum += Series::exponential(-approximant.exponents[j], length) * std::complex<double>(approximant.amplitudes[j]);
  return sum.coefficients();
}

std::vector<std::complex<double>> maclaurin_coefficients(const CmxApproximant& approximant, int count) {
  using Series = PowerSeries<std::complex<double>>;
  const auto length = static_cast<std::size_t>(count);
  Series sum = Series::constant(approximant.ground_energy, length);
  for (std::size_t n = 0; n < approximant.exponents.size(); ++n)
    sum += Series::exponential(-approximant.exponents[n], length) * approximant.amplitudes[n];
  return sum.coefficients();
}

namespace {

bool constant_energy(const ConnectedMoments& connected, int highest) {
  for (int k = 2; k <= highest; ++k)
    if (connected.at(k) != 0) return false;
  return true;
}

}  // namespace

std::vector<ScanRow> order_scan(const MomentSequence& moments, int max_order, const EngineOptions& options) {
  if (max_order < 1) throw Error("order_scan: max order must be at least 1");
  if (moments.highest_order() < 2 * max_order + 1)
    throw Error("order_scan: order " + std::to_string(max_order) + " needs moments up to mu_" +
                std::to_string(2 * max_order + 1));
  const ConnectedMoments connected = connected_moments(moments);
  std::vector<ScanRow> rows;
  for (int order = 1; order <= max_order; ++order) {
    ScanRow row;
    row.order = order;
    row.highest_moment = 2 * order + 1;
    if (constant_energy(connected, 2 * order + 1)) {
      // eigenstate: E(t) = I_1 exactly, the N → 0 limit of the ansatz
      CmxApproximant c;
      c.ground_energy = to_double(connected.at(1));
      c.hadamard = hadamard_minors(connected, order);
      c.provenance = connected.model_id + "/" + connected.state_id;
      c.warnings.push_back("connected moments beyond I_1 vanish; E(t) = I_1 is constant");
      row.cmx = std::move(c);
      row.zn = zn_from_moments(moments, 1, options);
      row.zn->warnings.push_back("trial state is an eigenstate; Z_1 is exact");
      rows.push_back(std::move(row));
      continue;
    }
    try {
      row.cmx = cmx_from_connected(connected, order, options);
    } catch (const Error& e) {
      row.cmx_error = e.what();
    }
    try {
      row.zn = zn_from_moments(moments, order + 1, options);
    } catch (const Error& e) {
      row.zn_error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cmx
