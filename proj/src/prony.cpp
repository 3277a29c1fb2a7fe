#include "cmxprony/prony.hpp"

#include "cmxprony/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cmx {

namespace {

template <class Real>
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using Complex = std::complex<Real>;

template <class Real>
Real magnitude(const Complex<Real>& z) {
  using std::sqrt;
  return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

template <class Real>
double as_double(const Real& value) {
  if constexpr (std::is_same_v<Real, double>) return value;
  else return value.template convert_to<double>();
}

template <class Real>
Real from_rational(const Rational& value) {
  if constexpr (std::is_same_v<Real, double>) return to_double(value);
  else return Real(value);
}

template <class Real>
std::vector<Real> load_values(const PronyProblem& problem) {
  std::vector<Real> values;
  values.reserve(problem.values.size());
  if (problem.exact) {
    for (const auto& v : *problem.exact) values.push_back(from_rational<Real>(v));
  } else {
    for (double v : problem.values) values.push_back(Real(v));
  }
  return values;
}

/// Scales the double-precision limit by ε_double/ε_Real so extended runs tolerate
/// proportionally worse conditioning.
template <class Real>
double effective_limit(double limit) {
  if constexpr (std::is_same_v<Real, double>) return limit;
  else {
    const double ratio = std::numeric_limits<double>::epsilon() / as_double(machine_epsilon<Real>());
    return limit * ratio;
  }
}

template <class Real>
double condition_number(const Matrix<Real>& matrix) {
  Eigen::JacobiSVD<Matrix<Real>> svd(matrix);
  const auto& sv = svd.singularValues();
  const Real smallest = sv(sv.size() - 1);
  if (smallest == Real(0)) return std::numeric_limits<double>::infinity();
  return as_double(Real(sv(0) / smallest));
}

template <class Real>
Complex<Real> integer_power(const Complex<Real>& base, int exponent) {
  Complex<Real> result(Real(1), Real(0));
  Complex<Real> factor = base;
  if (exponent < 0) {
    factor = Complex<Real>(Real(1), Real(0)) / base;
    exponent = -exponent;
  }
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result = result * factor;
    factor = factor * factor;
  }
  return result;
}

template <class Real>
struct Blocks {
  Matrix<Real> base;
  Matrix<Real> shifted;
  Vector<Real> rhs;
};

template <class Real>
Blocks<Real> hankel_blocks(const std::vector<Real>& values, int order) {
  Blocks<Real> blocks;
  blocks.base.resize(order, order);
  blocks.shifted.resize(order, order);
  blocks.rhs.resize(order);
  for (int r = 0; r < order; ++r) {
    blocks.rhs(r) = -values[static_cast<std::size_t>(r + order)];
    for (int c = 0; c < order; ++c) {
      blocks.base(r, c) = values[static_cast<std::size_t>(r + c)];
      blocks.shifted(r, c) = values[static_cast<std::size_t>(r + c + 1)];
    }
  }
  return blocks;
}

template <class Real>
double checked_hankel_condition(const Matrix<Real>& base, double limit) {
  const double cond = condition_number(base);
  if (!(cond <= limit)) {
    std::ostringstream msg;
    msg << "Hankel matrix is numerically singular (condition estimate " << format_number(cond, 3) << " exceeds "
        << format_number(limit, 3) << "); reduce the order (retry at N-1) or increase precision";
    throw DegenerateProblem(msg.str());
  }
  return cond;
}

template <class Real>
void sort_roots(std::vector<Complex<Real>>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex<Real>& a, const Complex<Real>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() > b.imag();
  });
}

template <class Real>
void reject_repeated(const std::vector<Complex<Real>>& roots, double tolerance) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const Real scale = std::max(magnitude(roots[i]), magnitude(roots[j]));
      const Real gap = magnitude(Complex<Real>(roots[i] - roots[j]));
      if (scale == Real(0) || gap <= Real(tolerance) * scale) {
        std::ostringstream msg;
        msg << "exponents " << as_double(roots[i].real()) << " and " << as_double(roots[j].real())
            << " coincide within relative tolerance " << tolerance << "; confluent systems are not supported";
        throw RepeatedRoots(msg.str());
      }
    }
  }
}

template <class Real>
std::vector<Complex<Real>> eigenvalues_of(const Matrix<Real>& matrix) {
  Eigen::EigenSolver<Matrix<Real>> solver(matrix, false);
  if (solver.info() != Eigen::Success) throw DegenerateProblem("eigenvalue iteration did not converge");
  std::vector<Complex<Real>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

template <class Real>
struct AmplitudeResult {
  std::vector<Complex<Real>> amplitudes;
  Real residual;
  double condition;
};

template <class Real>
AmplitudeResult<Real> fit_amplitudes(const std::vector<Real>& values, int shift,
                                     const std::vector<Complex<Real>>& roots, double limit) {
  const int n_eq = static_cast<int>(values.size());
  const int n_roots = static_cast<int>(roots.size());
  const bool all_real =
      std::all_of(roots.begin(), roots.end(), [](const Complex<Real>& b) { return b.imag() == Real(0); });
  for (const auto& b : roots)
    if (shift + 1 < 0 && b == Complex<Real>(Real(0), Real(0)))
      throw IllConditionedVandermonde("zero exponent with a negative power in the amplitude system");

  Matrix<Complex<Real>> vandermonde(n_eq, n_roots);
  for (int k = 0; k < n_eq; ++k)
    for (int n = 0; n < n_roots; ++n) vandermonde(k, n) = integer_power(roots[static_cast<std::size_t>(n)], k + 1 + shift);

  // Real formulation: [Re V, −Im V; Im V, Re V] [Re A; Im A] = [F; 0].
  const int cols = all_real ? n_roots : 2 * n_roots;
  const int rows = all_real ? n_eq : 2 * n_eq;
  Matrix<Real> system(rows, cols);
  Vector<Real> rhs = Vector<Real>::Zero(rows);
  for (int k = 0; k < n_eq; ++k) {
    rhs(k) = values[static_cast<std::size_t>(k)];
    for (int n = 0; n < n_roots; ++n) {
      const auto& v = vandermonde(k, n);
      system(k, n) = v.real();
      if (!all_real) {
        system(k, n + n_roots) = -v.imag();
        system(k + n_eq, n) = v.imag();
        system(k + n_eq, n + n_roots) = v.real();
      }
    }
  }
  Vector<Real> column_scale(cols);
  for (int c = 0; c < cols; ++c) {
    column_scale(c) = system.col(c).norm();
    if (column_scale(c) == Real(0)) throw IllConditionedVandermonde("amplitude system has a zero column");
    system.col(c) /= column_scale(c);
  }
  AmplitudeResult<Real> result;
  result.condition = condition_number(system);
  if (!(result.condition <= limit)) {
    std::ostringstream msg;
    msg << "amplitude system is ill-conditioned (condition estimate " << format_number(result.condition, 3)
        << " exceeds " << format_number(limit, 3) << ")";
    throw IllConditionedVandermonde(msg.str());
  }
  Vector<Real> solution = system.colPivHouseholderQr().solve(rhs);
  for (int n = 0; n < n_roots; ++n) {
    Real re = solution(n) / column_scale(n);
    Real im = all_real ? Real(0) : Real(solution(n + n_roots) / column_scale(n + n_roots));
    result.amplitudes.emplace_back(re, im);
  }

  result.residual = Real(0);
  for (int k = 0; k < n_eq; ++k) {
    Complex<Real> model(Real(0), Real(0));
    for (int n = 0; n < n_roots; ++n) model = model + result.amplitudes[static_cast<std::size_t>(n)] * vandermonde(k, n);
    using std::abs;
    const Real& target = values[static_cast<std::size_t>(k)];
    const Real denom = std::max(Real(1), Real(abs(target)));
    const Real err = magnitude(Complex<Real>(model - Complex<Real>(target, Real(0)))) / denom;
    result.residual = std::max(result.residual, err);
  }
  return result;
}

template <class Real>
std::vector<std::complex<double>> to_double_vector(const std::vector<Complex<Real>>& values) {
  std::vector<std::complex<double>> out;
  out.reserve(values.size());
  for (const auto& v : values) out.emplace_back(as_double(v.real()), as_double(v.imag()));
  return out;
}

template <class Real>
PronySolution solve_with(const PronyProblem& problem, PronyMethod method, const SolveOptions& options) {
  problem.validate();
  const int order = problem.order;
  const double limit = effective_limit<Real>(options.condition_limit);
  const std::vector<Real> values = load_values<Real>(problem);
  const Blocks<Real> blocks = hankel_blocks(values, order);

  PronySolution solution;
  solution.method = method;
  solution.precision = options.precision;
  solution.hankel_condition = checked_hankel_condition(blocks.base, limit);

  std::vector<Complex<Real>> roots;
  if (method == PronyMethod::LinearPolynomial) {
    const Vector<Real> coeffs = blocks.base.partialPivLu().solve(blocks.rhs);
    Matrix<Real> companion = Matrix<Real>::Zero(order, order);
    for (int i = 0; i < order; ++i) {
      if (i + 1 < order) companion(i + 1, i) = Real(1);
      companion(i, order - 1) = -coeffs(i);
    }
    roots = eigenvalues_of(companion);
    for (int i = 0; i < order; ++i) solution.polynomial.push_back(as_double(coeffs(i)));
    solution.polynomial.push_back(1.0);
  } else {
    const Matrix<Real> pencil = blocks.base.partialPivLu().solve(blocks.shifted);
    roots = eigenvalues_of(pencil);
  }
  sort_roots(roots);
  reject_repeated(roots, options.repeated_root_tolerance);

  const AmplitudeResult<Real> fit = fit_amplitudes(values, problem.shift, roots, limit);
  solution.exponents = to_double_vector(roots);
  solution.amplitudes = to_double_vector(fit.amplitudes);
  solution.residual = as_double(fit.residual);
  solution.amplitude_condition = fit.condition;
  return solution;
}

}  // namespace

PronyProblem PronyProblem::from_values(std::vector<double> values, int shift) {
  PronyProblem problem;
  problem.order = static_cast<int>(values.size() / 2);
  problem.values = std::move(values);
  problem.shift = shift;
  problem.validate();
  return problem;
}

PronyProblem PronyProblem::from_rationals(std::vector<Rational> values, int shift) {
  PronyProblem problem;
  problem.order = static_cast<int>(values.size() / 2);
  for (const auto& v : values) problem.values.push_back(to_double(v));
  problem.exact = std::move(values);
  problem.shift = shift;
  problem.validate();
  return problem;
}

void PronyProblem::validate() const {
  if (order < 1) throw Error("Prony problem needs order N >= 1");
  if (values.size() != static_cast<std::size_t>(2 * order))
    throw Error("Prony problem of order " + std::to_string(order) + " needs " + std::to_string(2 * order) +
                " values, got " + std::to_string(values.size()));
  if (exact && exact->size() != values.size()) throw Error("exact and floating Prony data differ in length");
}

std::string to_string(PronyMethod method) {
  return method == PronyMethod::LinearPolynomial ? "linear-polynomial" : "secular-pencil";
}

std::string to_string(LimitBehavior behavior) {
  switch (behavior) {
    case LimitBehavior::Converges: return "converges";
    case LimitBehavior::DivergesMinus: return "diverges_minus";
    case LimitBehavior::DivergesPlus: return "diverges_plus";
    case LimitBehavior::Oscillates: return "oscillates";
  }
  return "unknown";
}

HankelBlocks build_hankel(const PronyProblem& problem) {
  problem.validate();
  const auto blocks = hankel_blocks(problem.values, problem.order);
  return {blocks.base, blocks.shifted, blocks.rhs};
}

PronySolution solve(const PronyProblem& problem, PronyMethod method, const SolveOptions& options) {
  if (options.precision.is_extended()) {
    ScopedDigits digits(options.precision.digits);
    return solve_with<Extended>(problem, method, options);
  }
  return solve_with<double>(problem, method, options);
}

PronySolution solve_linear_prony(const PronyProblem& problem, const SolveOptions& options) {
  return solve(problem, PronyMethod::LinearPolynomial, options);
}

PronySolution solve_secular(const PronyProblem& problem, const SolveOptions& options) {
  return solve(problem, PronyMethod::SecularPencil, options);
}

AmplitudeFit solve_amplitudes(const PronyProblem& problem, std::span<const std::complex<double>> exponents,
                              const SolveOptions& options) {
  problem.validate();
  auto run = [&]<class Real>() {
    std::vector<Complex<Real>> roots;
    for (const auto& b : exponents) roots.emplace_back(Real(b.real()), Real(b.imag()));
    reject_repeated(roots, options.repeated_root_tolerance);
    const auto fit = fit_amplitudes(load_values<Real>(problem), problem.shift, roots,
                                    effective_limit<Real>(options.condition_limit));
    return AmplitudeFit{to_double_vector(fit.amplitudes), as_double(fit.residual), fit.condition};
  };
  if (options.precision.is_extended()) {
    ScopedDigits digits(options.precision.digits);
    return run.template operator()<Extended>();
  }
  return run.template operator()<double>();
}

RootDiagnostics classify_roots(const PronySolution& solution) {
  RootDiagnostics diagnostics;
  const auto& roots = solution.exponents;
  std::optional<std::size_t> dominant;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& b = roots[i];
    const bool is_real = std::abs(b.imag()) <= kRealRootTolerance * (1.0 + std::abs(b.real()));
    if (!is_real) {
      diagnostics.all_real = false;
      diagnostics.oscillatory = true;
    }
    if (b.real() <= 0.0) {
      diagnostics.all_positive = false;
      if (is_real) diagnostics.negative_real_roots.push_back(b.real());
      if (!dominant || b.real() < roots[*dominant].real()) dominant = i;
    }
  }
  if (!dominant) {
    diagnostics.limit_behavior = LimitBehavior::Converges;
    return diagnostics;
  }
  const auto& b = roots[*dominant];
  const bool dominant_real = std::abs(b.imag()) <= kRealRootTolerance * (1.0 + std::abs(b.real()));
  if (!dominant_real || b.real() == 0.0) {
    diagnostics.limit_behavior = LimitBehavior::Oscillates;
    return diagnostics;
  }
  const double amplitude = *dominant < solution.amplitudes.size() ? solution.amplitudes[*dominant].real() : 0.0;
  diagnostics.limit_behavior = amplitude < 0.0 ? LimitBehavior::DivergesMinus : LimitBehavior::DivergesPlus;
  return diagnostics;
}

}  // namespace cmx
