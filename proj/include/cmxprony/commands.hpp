#pragma once

#include "cmxprony/config.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cmx {

struct CommandResult {
  std::string text;                   // CSV or JSON document
  std::vector<std::string> warnings;  // for stderr
};

const std::vector<std::string>& command_names();

/// Dispatches to one of the cmd_* functions. Throws ConfigError for bad input. With a
/// single order, solver errors propagate; with an order range they become records.
CommandResult run_command(std::string_view name, const RunConfig& config);

CommandResult cmd_moments(const RunConfig& config);
CommandResult cmd_cmx(const RunConfig& config);
CommandResult cmd_zfit(const RunConfig& config);
CommandResult cmd_correlation(const RunConfig& config);
CommandResult cmd_reference(const RunConfig& config);
CommandResult cmd_scan(const RunConfig& config);

/// Short type name for an error ("DegenerateProblem", ...).
std::string error_kind(const std::exception& error);

}  // namespace cmx
