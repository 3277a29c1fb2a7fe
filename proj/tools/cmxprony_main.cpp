#include "cmxprony/catalog.hpp"
#include "cmxprony/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Flags {
  std::string config;
  std::string model;
  std::string orders;
  std::string t_grid;
  std::string format;
  std::string precision;
  std::string out;
};

cmx::RunConfig resolve(const Flags& flags) {
  cmx::RunConfig config = flags.config.empty() ? cmx::RunConfig{} : cmx::load_config(flags.config);
  if (!flags.model.empty()) cmx::select_catalog_model(config, flags.model);
  if (!flags.orders.empty()) config.orders = cmx::OrderRange::parse(flags.orders);
  if (!flags.t_grid.empty()) config.t_grid = cmx::TimeGrid::parse(flags.t_grid);
  if (!flags.format.empty()) config.format = cmx::parse_format(flags.format);
  if (!flags.precision.empty()) config.precision = cmx::Precision::parse(flags.precision);
  if (!flags.out.empty()) config.out_path = flags.out;
  if (!config.hamiltonian) cmx::select_catalog_model(config, "ho-quadratic");
  return config;
}

std::string catalog_listing() {
  std::string text = "Models:\n";
  for (const auto& entry : cmx::catalog()) text += "  " + entry.name + "  " + entry.description + "\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected-moments expansion and Prony fits from exact Hamiltonian moments"};
  app.footer(catalog_listing());
  app.require_subcommand(1);

  Flags flags;
  app.add_option("--config", flags.config, "Config file ([model], [trial], [run] sections)");
  app.add_option("--model", flags.model, "Catalog model name");
  app.add_option("--N", flags.orders, "Order or order range A..B");
  app.add_option("--t", flags.t_grid, "Time grid START:STOP:COUNT");
  app.add_option("--format", flags.format, "csv or json");
  app.add_option("--precision", flags.precision, "double or ext:DIGITS");
  app.add_option("--out", flags.out, "Output file (default stdout)");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"moments", "Exact moments mu_j and connected moments I_k"},
      {"cmx", "CMX approximants E^(N)(t) over an order range"},
      {"zfit", "Exponential fits Z_N(t) and U^(N)(t) = -Z'/Z"},
      {"correlation", "|C_N(tau)|^2 from Z_N(i tau)"},
      {"reference", "Diagonalization reference for Z, E and |C|^2"},
      {"scan", "A_0 and root diagnostics against the highest moment used"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const cmx::RunConfig config = resolve(flags);
    const cmx::CommandResult result = cmx::run_command(command, config);
    for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << '\n';
    if (config.out_path.empty()) {
      std::cout << result.text;
    } else {
      std::ofstream out(config.out_path);
      if (!out) throw cmx::ConfigError("cannot write output file '" + config.out_path + "'", 0, "out");
      out << result.text;
    }
    return 0;
  } catch (const cmx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cmx::Error& e) {
    std::cerr << "solver failure (" << cmx::error_kind(e) << "): " << e.what() << '\n';
    return kExitSolver;
  }
}
