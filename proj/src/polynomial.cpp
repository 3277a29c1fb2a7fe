#include "cmxprony/polynomial.hpp"

#include "cmxprony/errors.hpp"

#include <cmath>
#include <sstream>

namespace cmx {

Polynomial::Polynomial(int dims) : dims_(dims) {
  if (dims < 1 || dims > kMaxDims)
    throw DimensionMismatch("polynomial dimension must be 1 or 2, got " + std::to_string(dims));
}

Polynomial Polynomial::constant(int dims, const Rational& value) {
  Polynomial p(dims);
  p.add_term({}, value);
  return p;
}

Polynomial Polynomial::monomial(int dims, const Exponents& exponents, const Rational& coeff) {
  Polynomial p(dims);
  p.add_term(exponents, coeff);
  return p;
}

Polynomial Polynomial::from_terms(int dims,
                                  const std::vector<std::pair<Rational, std::vector<int>>>& terms) {
  Polynomial p(dims);
  for (const auto& [coeff, powers] : terms) {
    if (static_cast<int>(powers.size()) != dims)
      throw DimensionMismatch("exponent tuple has " + std::to_string(powers.size()) +
                              " entries, expected " + std::to_string(dims));
    Exponents e{};
    for (int d = 0; d < dims; ++d) {
      if (powers[d] < 0) throw Error("negative exponent in polynomial term");
      e[d] = powers[d];
    }
    p.add_term(e, coeff);
  }
  return p;
}

int Polynomial::degree(int dim) const {
  int result = 0;
  for (const auto& [e, c] : terms_) result = std::max(result, e[dim]);
  return result;
}

Rational Polynomial::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& coeff) {
  for (int d = dims_; d < kMaxDims; ++d)
    if (exponents[d] != 0) throw DimensionMismatch("exponent set on an unused dimension");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(int dim) const {
  Polynomial result(dims_);
  for (const auto& [e, c] : terms_) {
    if (e[dim] == 0) continue;
    Exponents lowered = e;
    lowered[dim] -= 1;
    result.terms_.emplace(lowered, c * e[dim]);
  }
  return result;
}

Polynomial Polynomial::shifted(int dim, int power) const {
  Polynomial result(dims_);
  for (const auto& [e, c] : terms_) {
    Exponents raised = e;
    raised[dim] += power;
    result.terms_.emplace_hint(result.terms_.end(), raised, c);
  }
  return result;
}

bool Polynomial::has_parity(int dim, int parity) const {
  for (const auto& [e, c] : terms_)
    if (e[dim] % 2 != parity) return false;
  return true;
}

void Polynomial::check_dims(const Polynomial& other) const {
  if (other.dims_ != dims_)
    throw DimensionMismatch("polynomial dimensions differ: " + std::to_string(dims_) + " vs " +
                            std::to_string(other.dims_));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_dims(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_dims(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= factor;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_dims(b);
  Polynomial result(a.dims_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e{};
      for (int d = 0; d < kMaxDims; ++d) e[d] = ea[d] + eb[d];
      result.add_term(e, ca * cb);
    }
  }
  return result;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dims_) throw DimensionMismatch("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (int d = 0; d < dims_; ++d) term *= std::pow(point[d], e[d]);
    sum += term;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  static constexpr const char* names[kMaxDims] = {"x", "y"};
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    Rational magnitude = abs(c);
    bool constant = true;
    for (int d = 0; d < dims_; ++d) constant = constant && e[d] == 0;
    if (magnitude != 1 || constant) out << magnitude.str();
    for (int d = 0; d < dims_; ++d) {
      if (e[d] == 0) continue;
      out << names[d];
      if (e[d] > 1) out << "^" << e[d];
    }
  }
  return out.str();
}

Polynomial hermite_polynomial(int n) {
  Polynomial previous = Polynomial::constant(1, 1);
  if (n == 0) return previous;
  Polynomial current = Polynomial::monomial(1, {1, 0}, 2);
  for (int k = 1; k < n; ++k) {
    Polynomial next = current.shifted(0) * Rational(2) - previous * Rational(2 * k);
    previous = std::move(current);
    current = std::move(next);
  }
  return current;
}

}  // namespace cmx
