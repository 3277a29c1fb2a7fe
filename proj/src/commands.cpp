#include "cmxprony/commands.hpp"

#include "cmxprony/catalog.hpp"
#include "cmxprony/cmx_engine.hpp"
#include "cmxprony/exact_refs.hpp"

#include <json.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace cmx {

using Json = nlohmann::ordered_json;

namespace {

constexpr double kOracleTolerance = 1e-8;

struct Column {
  std::string name;
  std::vector<double> values;
};

std::string csv_value(double v) { return std::isfinite(v) ? format_number(v) : "nan"; }

std::string render_csv(const std::vector<Column>& columns) {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_value(columns[c].values[r]);
    out << '\n';
  }
  return out.str();
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json curves_json(const std::vector<Column>& columns) {
  Json out = Json::object();
  for (const auto& column : columns) {
    Json values = Json::array();
    for (double v : column.values) values.push_back(number(v));
    out[column.name] = std::move(values);
  }
  return out;
}

Json complex_json(std::complex<double> z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json failure_json(int order, const std::exception& error) {
  return Json{{"N", order}, {"status", "failed"}, {"error", error_kind(error)}, {"message", error.what()}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

EngineOptions engine_options(const RunConfig& config) {
  EngineOptions options;
  options.precision = config.precision;
  return options;
}

const CatalogEntry* matching_entry(const RunConfig& config) {
  for (const auto& entry : catalog())
    if (entry.hamiltonian == config.model() && entry.trial == config.state()) return &entry;
  return nullptr;
}

SpectralReference spectral_reference(const RunConfig& config) {
  const CatalogEntry* entry = matching_entry(config);
  const bool two_d = config.model().dims() == 2;
  const int start = entry ? entry->basis_size : (two_d ? 24 : 64);
  const int cap = entry ? entry->max_basis_size : (two_d ? 48 : 256);
  return diagonalize(config.model(), config.state(), start, kOracleTolerance, cap);
}

std::optional<SpectralReference> optional_reference(const RunConfig& config, std::vector<std::string>& warnings) {
  try {
    return spectral_reference(config);
  } catch (const Unconverged& e) {
    warnings.push_back(std::string("oracle column omitted: ") + e.what());
    return std::nullopt;
  }
}

OrderRange orders_or(const RunConfig& config, OrderRange fallback) { return config.orders.value_or(fallback); }

std::vector<double> grid_or(const RunConfig& config, TimeGrid fallback) {
  return config.t_grid.value_or(fallback).points();
}

MomentSequence moments_for(const RunConfig& config, int needed) {
  return moments(config.model(), config.state(), std::max(needed, 1), config.model_name);
}

Json header(const RunConfig& config, std::string_view command) {
  return Json{{"command", command}, {"model", config.model_name}, {"precision", config.precision.to_string()}};
}

template <class Approximant, class Build, class Record>
std::vector<std::pair<int, Approximant>> build_orders(const OrderRange& orders, Build&& build, Record&& record,
                                                      Json& records) {
  std::vector<std::pair<int, Approximant>> built;
  for (int n = orders.first; n <= orders.last; ++n) {
    try {
      Approximant approximant = build(n);
      records.push_back(record(approximant));
      built.emplace_back(n, std::move(approximant));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      if (!orders.is_range()) throw;
      records.push_back(failure_json(n, e));
    }
  }
  return built;
}

void append_config_warnings(const RunConfig& config, CommandResult& result) {
  result.warnings.insert(result.warnings.begin(), config.warnings.begin(), config.warnings.end());
}

}  // namespace

std::string error_kind(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return "ConfigError";
  if (dynamic_cast<const DimensionMismatch*>(&error)) return "DimensionMismatch";
  if (dynamic_cast<const NonNormalizable*>(&error)) return "NonNormalizable";
  if (dynamic_cast<const DegenerateProblem*>(&error)) return "DegenerateProblem";
  if (dynamic_cast<const RepeatedRoots*>(&error)) return "RepeatedRoots";
  if (dynamic_cast<const IllConditionedVandermonde*>(&error)) return "IllConditionedVandermonde";
  if (dynamic_cast<const PoleEncountered*>(&error)) return "PoleEncountered";
  if (dynamic_cast<const Unconverged*>(&error)) return "Unconverged";
  return "Error";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"moments", "cmx", "zfit", "correlation", "reference", "scan"};
  return names;
}

CommandResult run_command(std::string_view name, const RunConfig& config) {
  if (name == "moments") return cmd_moments(config);
  if (name == "cmx") return cmd_cmx(config);
  if (name == "zfit") return cmd_zfit(config);
  if (name == "correlation") return cmd_correlation(config);
  if (name == "reference") return cmd_reference(config);
  if (name == "scan") return cmd_scan(config);
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

CommandResult cmd_moments(const RunConfig& config) {
  CommandResult result;
  append_config_warnings(config, result);
  const MomentSequence mu = moments_for(config, config.highest_moment);
  const ConnectedMoments connected = connected_moments(mu);
  if (config.format == OutputFormat::Json) {
    Json doc = header(config, "moments");
    doc["J"] = mu.highest_order();
    Json mus = Json::array();
    for (int j = 0; j <= mu.highest_order(); ++j) {
      const Rational& v = mu.mu[static_cast<std::size_t>(j)];
      mus.push_back(Json{{"j", j}, {"exact", to_string(v)}, {"value", to_double(v)}});
    }
    Json is = Json::array();
    for (int k = 1; k <= connected.highest_order(); ++k)
      is.push_back(Json{{"k", k}, {"exact", to_string(connected.at(k))}, {"value", to_double(connected.at(k))}});
    doc["moments"] = std::move(mus);
    doc["connected_moments"] = std::move(is);
    doc["warnings"] = result.warnings;
    result.text = dump(doc);
    return result;
  }
  std::ostringstream out;
  out << "j,mu_exact,mu,I_exact,I\n";
  for (int j = 0; j <= mu.highest_order(); ++j) {
    const Rational& v = mu.mu[static_cast<std::size_t>(j)];
    out << j << ',' << to_string(v) << ',' << format_number(to_double(v)) << ',';
    if (j >= 1) out << to_string(connected.at(j)) << ',' << format_number(to_double(connected.at(j)));
    else out << ',';
    out << '\n';
  }
  result.text = out.str();
  return result;
}

CommandResult cmd_cmx(const RunConfig& config) {
  CommandResult result;
  append_config_warnings(config, result);
  const OrderRange orders = orders_or(config, {1, 3});
  const MomentSequence mu = moments_for(config, std::max(2 * orders.last + 1, config.highest_moment));
  const ConnectedMoments connected = connected_moments(mu);
  const EngineOptions options = engine_options(config);

  Json records = Json::array();
  auto built = build_orders<CmxApproximant>(
      orders, [&](int n) { return cmx_from_connected(connected, n, options); },
      [](const CmxApproximant& a) {
        Json amplitudes = Json::array(), exponents = Json::array();
        for (auto z : a.amplitudes) amplitudes.push_back(complex_json(z));
        for (auto z : a.exponents) exponents.push_back(complex_json(z));
        return Json{{"N", a.order},
                    {"status", "ok"},
                    {"highest_moment", 2 * a.order + 1},
                    {"A0", number(a.ground_energy)},
                    {"amplitudes", amplitudes},
                    {"exponents", exponents},
                    {"limit_behavior", to_string(a.diagnostics.limit_behavior)},
                    {"all_real", a.diagnostics.all_real},
                    {"all_positive", a.diagnostics.all_positive},
                    {"oscillatory", a.diagnostics.oscillatory},
                    {"negative_real_roots", a.diagnostics.negative_real_roots},
                    {"residual", number(a.solution.residual)},
                    {"flagged", a.solution.flagged()},
                    {"hankel_condition", number(a.solution.hankel_condition)},
                    {"amplitude_condition", number(a.solution.amplitude_condition)},
                    {"hadamard", Json{{"base", rationals_json(a.hadamard.base)},
                                      {"shifted", rationals_json(a.hadamard.shifted)}}},
                    {"provenance", a.provenance},
                    {"warnings", a.warnings}};
      },
      records);

  const std::vector<double> ts = grid_or(config, {0.0, 3.0, 61});
  std::vector<Column> columns{{"t", ts}};
  for (const auto& [n, a] : built) {
    Column column{"EN_" + std::to_string(n), {}};
    for (double t : ts) column.values.push_back(eval_EN(a, t));
    columns.push_back(std::move(column));
  }
  const CatalogEntry* entry = matching_entry(config);
  if (entry && entry->exact == ExactReference::GeneratingFunctionHO) {
    Column column{"exact", {}};
    for (double t : ts) column.values.push_back(exact_E_ho(t));
    columns.push_back(std::move(column));
  }
  if (auto reference = optional_reference(config, result.warnings)) {
    Column column{"oracle", {}};
    for (double t : ts) column.values.push_back(reference_E(*reference, t));
    columns.push_back(std::move(column));
  }

  if (config.format == OutputFormat::Json) {
    Json doc = header(config, "cmx");
    doc["method"] = to_string(options.method);
    doc["orders"] = std::move(records);
    doc["curves"] = curves_json(columns);
    doc["warnings"] = result.warnings;
    result.text = dump(doc);
  } else {
    result.text = render_csv(columns);
  }
  return result;
}

CommandResult cmd_zfit(const RunConfig& config) {
  CommandResult result;
  append_config_warnings(config, result);
  const OrderRange orders = orders_or(config, {2, 5});
  const MomentSequence mu = moments_for(config, std::max(2 * orders.last - 1, config.highest_moment));
  const EngineOptions options = engine_options(config);

  Json records = Json::array();
  auto built = build_orders<ZnApproximant>(
      orders, [&](int n) { return zn_from_moments(mu, n, options); },
      [](const ZnApproximant& z) {
        return Json{{"N", z.order},
                    {"status", "ok"},
                    {"highest_moment", 2 * z.order - 1},
                    {"amplitudes", z.amplitudes},
                    {"exponents", z.exponents},
                    {"residual", number(z.solution.residual)},
                    {"flagged", z.solution.flagged()},
                    {"hankel_condition", number(z.solution.hankel_condition)},
                    {"amplitude_condition", number(z.solution.amplitude_condition)},
                    {"provenance", z.provenance},
                    {"warnings", z.warnings}};
      },
      records);

  const std::vector<double> ts = grid_or(config, {0.0, 3.0, 61});
  std::vector<Column> columns{{"t", ts}};
  for (const auto& [n, z] : built) {
    Column column{"UN_" + std::to_string(n), {}};
    bool pole = false;
    for (double t : ts) {
      try {
        column.values.push_back(eval_UN(z, t));
      } catch (const PoleEncountered&) {
        column.values.push_back(std::numeric_limits<double>::quiet_NaN());
        pole = true;
      }
    }
    if (pole) result.warnings.push_back("U_" + std::to_string(n) + " has a pole on the grid; those points are nan");
    columns.push_back(std::move(column));
  }
  const CatalogEntry* entry = matching_entry(config);
  if (entry && entry->exact == ExactReference::GeneratingFunctionHO) {
    Column column{"exact", {}};
    for (double t : ts) column.values.push_back(exact_E_ho(t));
    columns.push_back(std::move(column));
  }
  if (auto reference = optional_reference(config, result.warnings)) {
    Column column{"oracle", {}};
    for (double t : ts) column.values.push_back(reference_E(*reference, t));
    columns.push_back(std::move(column));
  }

  if (config.format == OutputFormat::Json) {
    Json doc = header(config, "zfit");
    doc["orders"] = std::move(records);
    doc["curves"] = curves_json(columns);
    doc["warnings"] = result.warnings;
    result.text = dump(doc);
  } else {
    result.text = render_csv(columns);
  }
  return result;
}

CommandResult cmd_correlation(const RunConfig& config) {
  CommandResult result;
  append_config_warnings(config, result);
  const OrderRange orders = orders_or(config, {2, 5});
  const MomentSequence mu = moments_for(config, std::max(2 * orders.last - 1, config.highest_moment));
  const EngineOptions options = engine_options(config);

  Json records = Json::array();
  auto built = build_orders<ZnApproximant>(
      orders, [&](int n) { return zn_from_moments(mu, n, options); },
      [](const ZnApproximant& z) {
        return Json{{"N", z.order},
                    {"status", "ok"},
                    {"highest_moment", 2 * z.order - 1},
                    {"amplitudes", z.amplitudes},
                    {"exponents", z.exponents},
                    {"residual", number(z.solution.residual)},
                    {"flagged", z.solution.flagged()},
                    {"warnings", z.warnings}};
      },
      records);

  const std::vector<double> taus = grid_or(config, {0.0, std::numbers::pi, 121});
  std::vector<Column> columns{{"tau", taus}};
  for (const auto& [n, z] : built) {
    Column column{"C2_" + std::to_string(n), {}};
    for (double tau : taus) column.values.push_back(correlation_squared(z, tau));
    columns.push_back(std::move(column));
  }
  const CatalogEntry* entry = matching_entry(config);
  if (entry && entry->exact == ExactReference::CorrelationHO) {
    Column column{"exact", {}};
    for (double tau : taus) column.values.push_back(exact_C2_ho(tau));
    columns.push_back(std::move(column));
  }
  if (auto reference = optional_reference(config, result.warnings)) {
    Column column{"oracle", {}};
    for (double tau : taus) column.values.push_back(reference_C2(*reference, tau));
    columns.push_back(std::move(column));
  }

  if (config.format == OutputFormat::Json) {
    Json doc = header(config, "correlation");
    doc["orders"] = std::move(records);
    doc["curves"] = curves_json(columns);
    doc["warnings"] = result.warnings;
    result.text = dump(doc);
  } else {
    result.text = render_csv(columns);
  }
  return result;
}

CommandResult cmd_reference(const RunConfig& config) {
  CommandResult result;
  append_config_warnings(config, result);
  const SpectralReference reference = spectral_reference(config);
  const CatalogEntry* entry = matching_entry(config);
  const std::vector<double> ts = grid_or(config, {0.0, 3.0, 61});

  std::vector<Column> columns{{"t", ts}, {"Z", {}}, {"E", {}}, {"C2", {}}};
  for (double t : ts) {
    const ReferenceValues values = reference_Z_E_C(reference, t);
    columns[1].values.push_back(values.Z.real());
    columns[2].values.push_back(values.E);
    columns[3].values.push_back(values.C2);
  }
  if (entry && entry->exact == ExactReference::GeneratingFunctionHO) {
    Column column{"exact_E", {}};
    for (double t : ts) column.values.push_back(exact_E_ho(t));
    columns.push_back(std::move(column));
  }
  if (entry && entry->exact == ExactReference::CorrelationHO) {
    Column column{"exact_C2", {}};
    for (double t : ts) column.values.push_back(exact_C2_ho(t));
    columns.push_back(std::move(column));
  }

  if (config.format == OutputFormat::Json) {
    Json doc = header(config, "reference");
    doc["basis_size"] = reference.basis_size;
    doc["converged"] = reference.converged;
    doc["convergence_gap"] = number(reference.convergence_gap);
    doc["captured_weight"] = number(reference.captured_weight());
    Json levels = Json::array();
    const std::size_t shown = std::min<std::size_t>(20, reference.energies.size());
    for (std::size_t j = 0; j < shown; ++j)
      levels.push_back(Json{{"j", j}, {"energy", number(reference.energies[j])}, {"overlap", number(reference.overlaps[j])}});
    doc["levels"] = std::move(levels);
    doc["curves"] = curves_json(columns);
    doc["warnings"] = result.warnings;
    result.text = dump(doc);
  } else {
    result.text = render_csv(columns);
  }
  return result;
}

CommandResult cmd_scan(const RunConfig& config) {
  CommandResult result;
  append_config_warnings(config, result);
  const OrderRange orders = orders_or(config, {1, 5});
  const MomentSequence mu = moments_for(config, std::max(2 * orders.last + 1, config.highest_moment));
  const std::vector<ScanRow> rows = order_scan(mu, orders.last, engine_options(config));

  std::vector<const ScanRow*> selected;
  for (const auto& row : rows)
    if (row.order >= orders.first) selected.push_back(&row);
  if (!orders.is_range() && !selected.empty() && !selected.front()->cmx) {
    const std::string& message = selected.front()->cmx_error;
    throw DegenerateProblem(message.empty() ? "CMX solve failed" : message);
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (config.format == OutputFormat::Json) {
    Json doc = header(config, "scan");
    Json out = Json::array();
    for (const ScanRow* row : selected) {
      Json record{{"N", row->order}, {"highest_moment", row->highest_moment}};
      if (row->cmx) {
        Json exponents = Json::array();
        for (auto z : row->cmx->exponents) exponents.push_back(complex_json(z));
        record["cmx"] = Json{{"status", "ok"},
                             {"A0", number(row->cmx->ground_energy)},
                             {"exponents", exponents},
                             {"limit_behavior", to_string(row->cmx->diagnostics.limit_behavior)},
                             {"negative_real_roots", row->cmx->diagnostics.negative_real_roots},
                             {"residual", number(row->cmx->solution.residual)}};
      } else {
        record["cmx"] = Json{{"status", "failed"}, {"message", row->cmx_error}};
      }
      if (row->zn) {
        record["zn"] = Json{{"status", "ok"},
                            {"order", row->zn->order},
                            {"W0", number(row->zn->exponents.front())},
                            {"A_W0", number(row->zn->amplitudes.front())},
                            {"exponents", row->zn->exponents},
                            {"amplitudes", row->zn->amplitudes},
                            {"residual", number(row->zn->solution.residual)}};
      } else {
        record["zn"] = Json{{"status", "failed"}, {"message", row->zn_error}};
      }
      out.push_back(std::move(record));
    }
    doc["rows"] = std::move(out);
    doc["warnings"] = result.warnings;
    result.text = dump(doc);
    return result;
  }

  std::ostringstream csv;
  csv << "N,highest_moment,A0,limit_behavior,negative_real_roots,cmx_residual,W0,A_W0,zn_residual\n";
  for (const ScanRow* row : selected) {
    csv << row->order << ',' << row->highest_moment << ',';
    if (row->cmx)
      csv << csv_value(row->cmx->ground_energy) << ',' << to_string(row->cmx->diagnostics.limit_behavior) << ','
          << row->cmx->diagnostics.negative_real_roots.size() << ',' << csv_value(row->cmx->solution.residual) << ',';
    else
      csv << "nan,failed,0,nan,";
    if (row->zn)
      csv << csv_value(row->zn->exponents.front()) << ',' << csv_value(row->zn->amplitudes.front()) << ','
          << csv_value(row->zn->solution.residual);
    else
      csv << csv_value(nan) << ',' << csv_value(nan) << ',' << csv_value(nan);
    csv << '\n';
  }
  result.text = csv.str();
  return result;
}

}  // namespace cmx
