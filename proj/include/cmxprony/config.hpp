#pragma once

#include "cmxprony/errors.hpp"
#include "cmxprony/numeric.hpp"
#include "cmxprony/state_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmx {

/// START:STOP:COUNT, inclusive of both ends.
struct TimeGrid {
  double start = 0.0;
  double stop = 3.0;
  int count = 61;

  static TimeGrid parse(std::string_view text);
  void validate() const;
  std::vector<double> points() const;
};

/// "A..B" or a single order "A".
struct OrderRange {
  int first = 1;
  int last = 1;

  static OrderRange parse(std::string_view text);
  bool is_range() const { return last > first; }
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);

struct RunConfig {
  std::string model_name = "custom";
  std::optional<PolynomialHamiltonian> hamiltonian;
  std::optional<GaussianPolyState> trial;
  std::optional<OrderRange> orders;
  std::optional<TimeGrid> t_grid;
  OutputFormat format = OutputFormat::Csv;
  Precision precision = Precision::extended(50);
  std::uint64_t seed = 0;
  int highest_moment = kDefaultMomentOrder;
  std::string out_path;
  std::vector<std::string> warnings;

  /// Model and trial resolved; throws ConfigError when either is missing.
  const PolynomialHamiltonian& model() const;
  const GaussianPolyState& state() const;
};

/// Parses the sectioned key-value format:
///
///     [model]
///     name = ho-quadratic        # catalog entry, or a custom model:
///     dims = 1
///     potential:
///       1 2                      # coeff exponent-tuple
///     [trial]
///     gauss = 2/5                # a_d per dimension
///     lin = 0                    # β_d per dimension
///     poly:
///       1 2
///       -1/2 0
///     [run]
///     N = 1..3
///     t = 0:3:61
///     format = csv
///     precision = ext:50
///     seed = 1
///     J = 13
///
/// Errors carry the line number and the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Replaces model and trial with a catalog entry.
void select_catalog_model(RunConfig& config, std::string_view name);

}  // namespace cmx
