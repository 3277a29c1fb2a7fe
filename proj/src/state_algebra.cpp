#include "cmxprony/state_algebra.hpp"

#include "cmxprony/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cmx {

namespace {

void require_same_dims(int a, int b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": dimensions differ (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
}

/// Rational parts R(n) of ∫ x^n exp(−B x² + G x) dx = sqrt(π/B) exp(G²/4B) R(n).
///
/// With c = G/(2B):  R(n) = Σ_{k even} C(n,k) c^{n−k} (k−1)!! / (2B)^{k/2}.
class GaussianMomentTable {
 public:
  GaussianMomentTable(Rational width, Rational drift) : width_(std::move(width)), center_(drift / (2 * width_)) {}

  const Rational& operator()(int n) {
    while (static_cast<int>(values_.size()) <= n) extend();
    return values_[static_cast<std::size_t>(n)];
  }

 private:
  void extend() {
    const int n = static_cast<int>(values_.size());
    // centered moments m_k = (k−1)!!/(2B)^{k/2}
    while (static_cast<int>(centered_.size()) <= n) {
      const int k = static_cast<int>(centered_.size());
      if (k == 0) centered_.emplace_back(1);
      else if (k % 2 == 1) centered_.emplace_back(0);
      else centered_.push_back(centered_[static_cast<std::size_t>(k - 2)] * Rational(k - 1) / (2 * width_));
    }
    Rational sum = 0;
    Rational binomial = 1;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) binomial = binomial * Rational(n - k + 1) / Rational(k);
      const Rational& m = centered_[static_cast<std::size_t>(k)];
      if (m == 0) continue;
      Rational shift_power = 1;
      for (int p = 0; p < n - k; ++p) shift_power *= center_;
      sum += binomial * shift_power * m;
    }
    values_.push_back(sum);
  }

  Rational width_;
  Rational center_;
  std::vector<Rational> centered_;
  std::vector<Rational> values_;
};

struct IntegralKernel {
  std::vector<GaussianMomentTable> tables;
  ExactScalar prefactor;
};

IntegralKernel make_kernel(int dims, const std::vector<Rational>& quad_left, const std::vector<Rational>& lin_left,
                           const std::vector<Rational>& quad_right, const std::vector<Rational>& lin_right) {
  IntegralKernel kernel;
  kernel.prefactor = ExactScalar::pi_power(Rational(dims, 2));
  Rational exp_argument = 0;
  for (int d = 0; d < dims; ++d) {
    Rational width = quad_left[d] + quad_right[d];
    Rational drift = lin_left[d] + lin_right[d];
    if (width <= 0) throw NonNormalizable("combined Gaussian exponent must be positive in every dimension");
    kernel.prefactor *= ExactScalar::power(width, Rational(-1, 2));
    exp_argument += drift * drift / (4 * width);
    kernel.tables.emplace_back(width, drift);
  }
  kernel.prefactor *= ExactScalar::exp_of(exp_argument);
  return kernel;
}

Rational integrate_product(IntegralKernel& kernel, const Polynomial& left, const Polynomial& right) {
  const int dims = left.dims();
  Rational sum = 0;
  for (const auto& [el, cl] : left.terms()) {
    for (const auto& [er, cr] : right.terms()) {
      Rational term = cl * cr;
      for (int d = 0; d < dims && term != 0; ++d) term *= kernel.tables[static_cast<std::size_t>(d)](el[d] + er[d]);
      sum += term;
    }
  }
  return sum;
}

/// Polynomial parts of H^k φ for k = 0..count−1.
std::vector<Polynomial> krylov_polynomials(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state,
                                           int count) {
  std::vector<Polynomial> result;
  GaussianPolyState current = state;
  for (int k = 0; k < count; ++k) {
    if (k > 0) current = apply_hamiltonian(hamiltonian, current);
    result.push_back(current.poly);
  }
  return result;
}

}  // namespace

GaussianPolyState GaussianPolyState::make(Polynomial poly, std::vector<Rational> quad, std::vector<Rational> lin) {
  GaussianPolyState state;
  const int dims = poly.dims();
  state.poly = std::move(poly);
  state.quad = std::move(quad);
  state.lin = lin.empty() ? std::vector<Rational>(static_cast<std::size_t>(dims), Rational(0)) : std::move(lin);
  state.validate();
  return state;
}

void GaussianPolyState::validate() const {
  const auto dims = static_cast<std::size_t>(poly.dims());
  if (quad.size() != dims) throw DimensionMismatch("Gaussian exponents must have one entry per dimension");
  if (lin.size() != dims) throw DimensionMismatch("linear exponents must have one entry per dimension");
  for (const auto& a : quad)
    if (a <= 0) throw NonNormalizable("Gaussian exponent must be positive, got " + a.str());
  if (poly.is_zero()) throw Error("state polynomial is identically zero");
}

std::optional<std::string> PolynomialHamiltonian::boundedness_warning() const {
  const int dims = potential.dims();
  auto minimum_within = [&](double radius) {
    const int steps = dims == 1 ? 400 : 80;
    double best = std::numeric_limits<double>::infinity();
    std::array<double, 2> point{};
    for (int i = 0; i <= steps; ++i) {
      point[0] = -radius + 2 * radius * i / steps;
      if (dims == 1) {
        best = std::min(best, potential.evaluate(std::span<const double>(point.data(), 1)));
        continue;
      }
      for (int j = 0; j <= steps; ++j) {
        point[1] = -radius + 2 * radius * j / steps;
        best = std::min(best, potential.evaluate(std::span<const double>(point.data(), 2)));
      }
    }
    return best;
  };
  const double inner = minimum_within(5.0);
  const double outer = minimum_within(10.0);
  if (outer < inner - 1e-9 * (1.0 + std::abs(inner)))
    return "potential decreases towards the edge of the [-10, 10] check grid (min " + format_number(outer) +
           " vs " + format_number(inner) + " on [-5, 5]); V may be unbounded below";
  return std::nullopt;
}

std::vector<double> MomentSequence::as_doubles() const {
  std::vector<double> out;
  out.reserve(mu.size());
  for (const auto& m : mu) out.push_back(to_double(m));
  return out;
}

std::vector<double> ConnectedMoments::as_doubles() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

GaussianPolyState apply_hamiltonian(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state) {
  require_same_dims(hamiltonian.dims(), state.dims(), "apply_hamiltonian");
  const int dims = state.dims();
  const Polynomial& q = state.poly;
  Polynomial result = hamiltonian.potential * q;
  for (int d = 0; d < dims; ++d) {
    const Rational& a = state.quad[static_cast<std::size_t>(d)];
    const Rational& beta = state.lin[static_cast<std::size_t>(d)];
    // (∂_d log g) = u = −2a x_d + β;  ∂²(q g)/g = q'' + 2 q' u + q (u² − 2a)
    Polynomial u = Polynomial::monomial(dims, d == 0 ? Exponents{1, 0} : Exponents{0, 1}, -2 * a);
    u.add_term({}, beta);
    Polynomial u_squared_shift = u * u;
    u_squared_shift.add_term({}, -2 * a);
    Polynomial q_prime = q.derivative(d);
    result -= q_prime.derivative(d);
    result -= Rational(2) * (q_prime * u);
    result -= q * u_squared_shift;
  }
  GaussianPolyState out = state;
  out.poly = std::move(result);
  return out;
}

ExactScalar inner_product(const GaussianPolyState& left, const GaussianPolyState& right) {
  require_same_dims(left.dims(), right.dims(), "inner_product");
  IntegralKernel kernel = make_kernel(left.dims(), left.quad, left.lin, right.quad, right.lin);
  Rational value = integrate_product(kernel, left.poly, right.poly);
  if (value == 0) return ExactScalar(Rational(0));
  return ExactScalar(value) * kernel.prefactor * left.scale * right.scale;
}

std::vector<ExactScalar> inner_products(const std::vector<GaussianPolyState>& lefts, const GaussianPolyState& right) {
  std::vector<ExactScalar> out;
  if (lefts.empty()) return out;
  const auto& first = lefts.front();
  require_same_dims(first.dims(), right.dims(), "inner_products");
  IntegralKernel kernel = make_kernel(right.dims(), first.quad, first.lin, right.quad, right.lin);
  out.reserve(lefts.size());
  for (const auto& left : lefts) {
    require_same_dims(left.dims(), right.dims(), "inner_products");
    if (left.quad != first.quad || left.lin != first.lin)
      throw Error("inner_products: left states must share Gaussian exponents");
    Rational value = integrate_product(kernel, left.poly, right.poly);
    out.push_back(value == 0 ? ExactScalar(Rational(0)) : ExactScalar(value) * kernel.prefactor * left.scale * right.scale);
  }
  return out;
}

GaussianPolyState normalize(const GaussianPolyState& state) {
  state.validate();
  GaussianPolyState out = state;
  const Rational lead = state.poly.terms().rbegin()->second;
  out.poly *= Rational(1) / lead;
  out.scale = ExactScalar(1);
  ExactScalar norm = inner_product(out, out);
  out.scale = norm.sqrt().inverse();
  return out;
}

Rational split_moment(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state, int left_power,
                      int right_power) {
  require_same_dims(hamiltonian.dims(), state.dims(), "split_moment");
  auto krylov = krylov_polynomials(hamiltonian, state, std::max(left_power, right_power) + 1);
  IntegralKernel kernel = make_kernel(state.dims(), state.quad, state.lin, state.quad, state.lin);
  Rational norm = integrate_product(kernel, krylov[0], krylov[0]);
  return integrate_product(kernel, krylov[static_cast<std::size_t>(left_power)],
                           krylov[static_cast<std::size_t>(right_power)]) /
         norm;
}

MomentSequence moments(const PolynomialHamiltonian& hamiltonian, const GaussianPolyState& state, int highest_order,
                       std::string model_id, std::string state_id) {
  if (highest_order < 1) throw Error("moments: highest order must be at least 1");
  require_same_dims(hamiltonian.dims(), state.dims(), "moments");
  state.validate();
  const int half = (highest_order + 1) / 2;
  auto krylov = krylov_polynomials(hamiltonian, state, half + 1);
  IntegralKernel kernel = make_kernel(state.dims(), state.quad, state.lin, state.quad, state.lin);
  const Rational norm = integrate_product(kernel, krylov[0], krylov[0]);
  MomentSequence result;
  result.model_id = std::move(model_id);
  result.state_id = std::move(state_id);
  result.mu.reserve(static_cast<std::size_t>(highest_order) + 1);
  result.mu.emplace_back(1);
  for (int j = 1; j <= highest_order; ++j) {
    const int left = j / 2;
    const int right = j - left;
    result.mu.push_back(integrate_product(kernel, krylov[static_cast<std::size_t>(left)],
                                          krylov[static_cast<std::size_t>(right)]) /
                        norm);
  }
  return result;
}

ConnectedMoments connected_moments(const MomentSequence& moments) {
  const auto& mu = moments.mu;
  if (mu.empty() || mu[0] != 1) throw Error("connected_moments: moment sequence must be normalized (mu_0 = 1)");
  ConnectedMoments result;
  result.model_id = moments.model_id;
  result.state_id = moments.state_id;
  const int highest = moments.highest_order();
  if (highest < 1) return result;
  std::vector<Rational>& connected = result.values;  // connected[i] = I_{i+1}
  connected.push_back(mu[1]);
  for (int j = 1; j < highest; ++j) {
    Rational value = mu[static_cast<std::size_t>(j + 1)];
    Rational binomial = 1;  // C(j, i)
    for (int i = 0; i <= j - 1; ++i) {
      if (i > 0) binomial = binomial * Rational(j - i + 1) / Rational(i);
      value -= binomial * connected[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(j - i)];
    }
    connected.push_back(value);
  }
  return result;
}

}  // namespace cmx
