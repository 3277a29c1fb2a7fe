#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cmx {

/// Truncated formal power series Σ_{j<n} c_j t^j over any field-like scalar.
template <class T>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<T> coefficients) : c_(std::move(coefficients)) {}

  static PowerSeries constant(const T& value, std::size_t length) {
    std::vector<T> c(length, T(0));
    if (length > 0) c[0] = value;
    return PowerSeries(std::move(c));
  }

  /// exp(rate · t) truncated to `length` terms.
  static PowerSeries exponential(const T& rate, std::size_t length) {
    std::vector<T> c;
    c.reserve(length);
    T term(1);
    for (std::size_t j = 0; j < length; ++j) {
      c.push_back(term);
      term = term * rate / T(static_cast<long>(j + 1));
    }
    return PowerSeries(std::move(c));
  }

  std::size_t size() const { return c_.size(); }
  const T& operator[](std::size_t j) const { return c_[j]; }
  const std::vector<T>& coefficients() const { return c_; }

  PowerSeries& operator+=(const PowerSeries& other) {
    check(other);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += other.c_[j];
    return *this;
  }
  PowerSeries& operator*=(const T& factor) {
    for (auto& c : c_) c *= factor;
    return *this;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator*(PowerSeries a, const T& factor) { return a *= factor; }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.check(b);
    std::vector<T> c(a.size(), T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return PowerSeries(std::move(c));
  }

  /// Series quotient; requires a nonzero constant term in the divisor.
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
    a.check(b);
    if (b.size() == 0 || b.c_[0] == T(0)) throw std::domain_error("power series division by a series with zero constant term");
    std::vector<T> q(a.size(), T(0));
    for (std::size_t n = 0; n < a.size(); ++n) {
      T acc = a.c_[n];
      for (std::size_t k = 1; k <= n; ++k) acc -= b.c_[k] * q[n - k];
      q[n] = acc / b.c_[0];
    }
    return PowerSeries(std::move(q));
  }

  /// Formal derivative; the result is one term shorter.
  PowerSeries derivative() const {
    std::vector<T> d;
    for (std::size_t j = 1; j < c_.size(); ++j) d.push_back(c_[j] * T(static_cast<long>(j)));
    return PowerSeries(std::move(d));
  }

  PowerSeries truncated(std::size_t length) const {
    return PowerSeries(std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(length, c_.size()))));
  }

 private:
  void check(const PowerSeries& other) const {
    if (other.size() != size()) throw std::invalid_argument("power series lengths differ");
  }

  std::vector<T> c_;
};

}  // namespace cmx
