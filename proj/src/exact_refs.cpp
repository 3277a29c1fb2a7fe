#include "cmxprony/exact_refs.hpp"

#include "cmxprony/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cmx {

double exact_E_ho(double t) {
  const double u = std::exp(-4.0 * t);
  const double numerator = ((121.0 * u + 189199.0) * u + 8180919.0) * u + 6561.0;
  const double denominator = (81.0 - u) * ((121.0 * u + 20198.0) * u + 81.0);
  return numerator / denominator;
}

std::array<double, 3> exact_E_ho_poles() {
  // 121u² + 20198u + 81 = 0, written to avoid cancellation in the small root
  const double disc = std::sqrt(20198.0 * 20198.0 - 4.0 * 121.0 * 81.0);
  const double large = (-20198.0 - disc) / (2.0 * 121.0);
  const double small = 81.0 / (121.0 * large);
  return {large, small, 81.0};
}

double exact_C2_ho(double tau) { return 4.0 * std::sqrt(2.0) / std::sqrt(41.0 - 9.0 * std::cos(4.0 * tau)); }

double SpectralReference::captured_weight() const { return std::accumulate(overlaps.begin(), overlaps.end(), 0.0); }

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Matrix of x^power in the first `size` oscillator functions, exact within the block.
MatrixXd position_power(int size, int power) {
  const int padded = size + power;
  MatrixXd x = MatrixXd::Zero(padded, padded);
  for (int n = 0; n + 1 < padded; ++n) x(n, n + 1) = x(n + 1, n) = std::sqrt((n + 1) / 2.0);
  MatrixXd result = MatrixXd::Identity(padded, padded);
  for (int p = 0; p < power; ++p) result = result * x;
  return result.topLeftCorner(size, size);
}

/// Hermite function h_n(x) = (2^n n! √π)^{−1/2} H_n(x) e^{−x²/2} as a Gaussian-poly state.
GaussianPolyState hermite_function(int n) {
  GaussianPolyState state = GaussianPolyState::make(hermite_polynomial(n), {Rational(1, 2)});
  Integer norm = 1;
  for (int k = 1; k <= n; ++k) norm *= 2 * k;
  state.scale = ExactScalar::power(Rational(norm), Rational(-1, 2)) * ExactScalar::pi_power(Rational(-1, 4));
  return state;
}

GaussianPolyState tensor_state(const GaussianPolyState& x, const GaussianPolyState& y) {
  Polynomial poly(2);
  for (const auto& [ex, cx] : x.poly.terms())
    for (const auto& [ey, cy] : y.poly.terms()) poly.add_term({ex[0], ey[0]}, cx * cy);
  GaussianPolyState state = GaussianPolyState::make(poly, {x.quad[0], y.quad[0]});
  state.scale = x.scale * y.scale;
  return state;
}

/// Trial-state coefficients in the (tensor) oscillator basis, normalized by ⟨φ|φ⟩.
VectorXd trial_coefficients(const GaussianPolyState& trial, int size) {
  const int dims = trial.dims();
  std::vector<GaussianPolyState> basis;
  std::vector<GaussianPolyState> one_d;
  for (int n = 0; n < size; ++n) one_d.push_back(hermite_function(n));
  if (dims == 1) {
    basis = one_d;
  } else {
    for (int n = 0; n < size; ++n)
      for (int m = 0; m < size; ++m) basis.push_back(tensor_state(one_d[static_cast<std::size_t>(n)], one_d[static_cast<std::size_t>(m)]));
  }
  const ExactScalar norm = inner_product(trial, trial).sqrt();
  const std::vector<ExactScalar> projections = inner_products(basis, trial);
  VectorXd coefficients(static_cast<Eigen::Index>(basis.size()));
  ScopedDigits digits(40);
  const Extended inv_norm = Extended(1) / norm.to_extended();
  for (std::size_t i = 0; i < projections.size(); ++i)
    coefficients(static_cast<Eigen::Index>(i)) = (projections[i].to_extended() * inv_norm).convert_to<double>();
  return coefficients;
}

MatrixXd hamiltonian_matrix(const PolynomialHamiltonian& hamiltonian, int size) {
  const int dims = hamiltonian.dims();
  // −d²/dx² = (−d²/dx² + x²) − x², the first part diagonal with entries 2n + 1
  MatrixXd kinetic = -position_power(size, 2);
  for (int n = 0; n < size; ++n) kinetic(n, n) += 2.0 * n + 1.0;
  int max_power = 0;
  for (const auto& [e, c] : hamiltonian.potential.terms()) max_power = std::max({max_power, e[0], e[1]});
  std::vector<MatrixXd> powers;
  for (int p = 0; p <= max_power; ++p) powers.push_back(position_power(size, p));

  if (dims == 1) {
    MatrixXd h = kinetic;
    for (const auto& [e, c] : hamiltonian.potential.terms()) h += to_double(c) * powers[static_cast<std::size_t>(e[0])];
    return h;
  }
  const int total = size * size;
  MatrixXd h = MatrixXd::Zero(total, total);
  auto add_kron = [&](const MatrixXd& a, const MatrixXd& b, double factor) {
    for (int n = 0; n < size; ++n)
      for (int np = 0; np < size; ++np) {
        const double anp = a(n, np);
        if (anp == 0.0) continue;
        for (int m = 0; m < size; ++m)
          for (int mp = 0; mp < size; ++mp) {
            const double bmp = b(m, mp);
            if (bmp != 0.0) h(n * size + m, np * size + mp) += factor * anp * bmp;
          }
      }
  };
  const MatrixXd identity = MatrixXd::Identity(size, size);
  add_kron(kinetic, identity, 1.0);
  add_kron(identity, kinetic, 1.0);
  for (const auto& [e, c] : hamiltonian.potential.terms())
    add_kron(powers[static_cast<std::size_t>(e[0])], powers[static_cast<std::size_t>(e[1])], to_double(c));
  return h;
}

/// Basis-index groups of conserved parity; a dimension splits only when V is even in it.
std::vector<std::vector<int>> parity_blocks(const PolynomialHamiltonian& hamiltonian, int size) {
  const int dims = hamiltonian.dims();
  std::array<bool, kMaxDims> conserved{};
  for (int d = 0; d < dims; ++d) conserved[static_cast<std::size_t>(d)] = hamiltonian.potential.has_parity(d, 0);
  const int total = dims == 1 ? size : size * size;
  std::vector<std::vector<int>> blocks(4);
  for (int idx = 0; idx < total; ++idx) {
    const int n = dims == 1 ? idx : idx / size;
    const int m = dims == 1 ? 0 : idx % size;
    const int key = (conserved[0] ? n % 2 : 0) + 2 * (conserved[1] ? m % 2 : 0);
    blocks[static_cast<std::size_t>(key)].push_back(idx);
  }
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return blocks;
}

double gap_between(const SpectralReference& coarse, const SpectralReference& fine, int levels) {
  double gap = 0.0;
  const auto count = static_cast<std::size_t>(
      std::min<int>(levels, static_cast<int>(std::min(coarse.energies.size(), fine.energies.size()))));
  for (std::size_t j = 0; j < count; ++j) {
    gap = std::max(gap, std::abs(coarse.energies[j] - fine.energies[j]));
    gap = std::max(gap, std::abs(coarse.overlaps[j] - fine.overlaps[j]));
  }
  return gap;
}

template <class Real>
double as_double(const Real& value) {
  if constexpr (std::is_same_v<Real, double>) return value;
  else return value.template convert_to<double>();
}

template <class Real>
RitzResult ritz(const MomentSequence& moments, int order) {
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix gram(order, order);
  Matrix hamiltonian(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      gram(i, j) = Real(moments.mu[static_cast<std::size_t>(i + j)]);
      hamiltonian(i, j) = Real(moments.mu[static_cast<std::size_t>(i + j + 1)]);
    }
  Eigen::JacobiSVD<Matrix> svd(gram);
  const auto& sv = svd.singularValues();
  double limit = 1e12;
  if constexpr (!std::is_same_v<Real, double>)
    limit *= std::numeric_limits<double>::epsilon() / as_double(Real(std::numeric_limits<Real>::epsilon()));
  if (sv(order - 1) == Real(0) || !(as_double(Real(sv(0) / sv(order - 1))) <= limit))
    throw DegenerateProblem("Krylov Gram matrix is numerically singular; reduce the order");
  Eigen::LLT<Matrix> cholesky(gram);
  if (cholesky.info() != Eigen::Success) throw DegenerateProblem("Krylov Gram matrix is not positive definite");
  const Matrix lower = cholesky.matrixL();
  const Matrix half = lower.template triangularView<Eigen::Lower>().solve(hamiltonian);
  Matrix reduced = lower.template triangularView<Eigen::Lower>().solve(half.transpose()).transpose();
  reduced = (reduced + reduced.transpose()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reduced);
  if (solver.info() != Eigen::Success) throw DegenerateProblem("Ritz eigenproblem did not converge");
  RitzResult result;
  const Real scale = lower(0, 0) * lower(0, 0);
  for (int j = 0; j < order; ++j) {
    result.values.push_back(as_double(Real(solver.eigenvalues()(j))));
    const Real q = solver.eigenvectors()(0, j);
    result.overlaps.push_back(as_double(Real(scale * q * q)));
  }
  return result;
}

}  // namespace

SpectralReference diagonalize_fixed(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& trial,
                                    int basis_size) {
  if (hamiltonian.dims() != trial.dims()) throw DimensionMismatch("diagonalize: model and trial dimensions differ");
  if (basis_size < 2) throw Error("diagonalize: basis size must be at least 2");
  const MatrixXd h = hamiltonian_matrix(hamiltonian, basis_size);
  const VectorXd coefficients = trial_coefficients(trial, basis_size);
  std::vector<std::pair<double, double>> levels;
  for (const auto& block : parity_blocks(hamiltonian, basis_size)) {
    const auto n = static_cast<Eigen::Index>(block.size());
    MatrixXd sub(n, n);
    VectorXd c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      c(i) = coefficients(block[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = h(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]);
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(sub);
    if (solver.info() != Eigen::Success) throw Error("diagonalize: eigensolver failed");
    const VectorXd projections = solver.eigenvectors().transpose() * c;
    for (Eigen::Index j = 0; j < n; ++j) levels.emplace_back(solver.eigenvalues()(j), projections(j) * projections(j));
  }
  std::sort(levels.begin(), levels.end());
  SpectralReference reference;
  reference.basis_size = basis_size;
  for (const auto& [e, w] : levels) {
    reference.energies.push_back(e);
    reference.overlaps.push_back(w);
  }
  return reference;
}

std::vector<double> basis_moments(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& trial,
                                  int basis_size, int highest) {
  if (hamiltonian.dims() != trial.dims()) throw DimensionMismatch("basis_moments: model and trial dimensions differ");
  const MatrixXd h = hamiltonian_matrix(hamiltonian, basis_size);
  std::vector<VectorXd> powers{trial_coefficients(trial, basis_size)};
  for (int k = 1; k <= (highest + 1) / 2; ++k) powers.push_back(h * powers.back());
  std::vector<double> mu;
  for (int j = 0; j <= highest; ++j)
    mu.push_back(powers[static_cast<std::size_t>(j / 2)].dot(powers[static_cast<std::size_t>(j - j / 2)]));
  return mu;
}

SpectralReference diagonalize(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& trial, int basis_size,
                              double tolerance, int max_basis_size) {
  if (basis_size < 8) throw Error("diagonalize: basis size must be at least 8");
  constexpr int kComparedLevels = 8;
  SpectralReference coarse = diagonalize_fixed(hamiltonian, trial, basis_size / 2);
  for (int size = basis_size;; size *= 2) {
    SpectralReference fine = diagonalize_fixed(hamiltonian, trial, size);
    fine.convergence_gap = gap_between(coarse, fine, kComparedLevels);
    if (fine.convergence_gap < tolerance) {
      fine.converged = true;
      return fine;
    }
    if (2 * size > max_basis_size)
      throw Unconverged("diagonalization did not converge: gap " + format_number(fine.convergence_gap, 3) +
                            " at basis size " + std::to_string(size) + " (tolerance " + format_number(tolerance, 3) +
                            ")",
                        size);
    coarse = std::move(fine);
  }
}

RitzResult rrk_oracle(const MomentSequence& moments, int order, const Precision& precision) {
  if (order < 1) throw Error("rrk_oracle: order must be at least 1");
  if (moments.highest_order() < 2 * order - 1)
    throw Error("rrk_oracle: order " + std::to_string(order) + " needs moments up to mu_" + std::to_string(2 * order - 1));
  if (precision.is_extended()) {
    ScopedDigits digits(precision.digits);
    return ritz<Extended>(moments, order);
  }
  return ritz<double>(moments, order);
}

std::complex<double> reference_Z(const SpectralReference& reference, std::complex<double> t) {
  std::complex<double> sum(0.0);
  for (std::size_t j = 0; j < reference.energies.size(); ++j)
    sum += reference.overlaps[j] * std::exp(-t * reference.energies[j]);
  return sum;
}

double reference_E(const SpectralReference& reference, double t) {
  if (reference.energies.empty()) throw Error("reference_E: empty spectrum");
  const double shift = reference.energies.front();
  double z = 0.0;
  double dz = 0.0;
  for (std::size_t j = 0; j < reference.energies.size(); ++j) {
    const double term = reference.overlaps[j] * std::exp(-t * (reference.energies[j] - shift));
    z += term;
    dz += reference.energies[j] * term;
  }
  return dz / z;
}

double reference_C2(const SpectralReference& reference, double tau) {
  return std::norm(reference_Z(reference, std::complex<double>(0.0, tau)));
}

ReferenceValues reference_Z_E_C(const SpectralReference& reference, double t) {
  return {reference_Z(reference, t), reference_E(reference, t), reference_C2(reference, t)};
}

std::vector<double> reference_moments(const SpectralReference& reference, int highest) {
  std::vector<double> out(static_cast<std::size_t>(highest) + 1, 0.0);
  for (std::size_t j = 0; j < reference.energies.size(); ++j) {
    double power = reference.overlaps[j];
    for (auto& value : out) {
      value += power;
      power *= reference.energies[j];
    }
  }
  const double weight = out[0];
  for (auto& value : out) value /= weight;
  return out;
}

}  // namespace cmx
