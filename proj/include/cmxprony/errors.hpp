#pragma once

#include <stdexcept>
#include <string>

namespace cmx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonNormalizable : public Error {
 public:
  using Error::Error;
};

/// Hankel block numerically singular; the message suggests retrying at a lower order.
class DegenerateProblem : public Error {
 public:
  using Error::Error;
};

/// Two recovered exponents coincide (confluent system, not supported).
class RepeatedRoots : public Error {
 public:
  using Error::Error;
};

class IllConditionedVandermonde : public Error {
 public:
  using Error::Error;
};

class PoleEncountered : public Error {
 public:
  using Error::Error;
};

class Unconverged : public Error {
 public:
  Unconverged(const std::string& what, int basis_size) : Error(what), basis_size_(basis_size) {}
  int basis_size() const { return basis_size_; }

 private:
  int basis_size_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {})
      : Error(line > 0 ? "line " + std::to_string(line) + (key.empty() ? "" : " [" + key + "]") +
                             ": " + what
                       : (key.empty() ? what : "[" + key + "] " + what)),
        line_(line),
        key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace cmx
