#include "cmxprony/config.hpp"

#include "cmxprony/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cmx {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) parts.push_back(s.substr(i, j - i));
    i = j;
  }
  return parts;
}

template <class T>
std::optional<T> parse_integer(std::string_view text) {
  T value{};
  text = trim(text);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

struct TermLine {
  int line;
  std::string text;
};

struct Section {
  std::map<std::string, std::pair<int, std::string>> values;  // key -> (line, value)
  std::map<std::string, std::pair<int, std::vector<TermLine>>> blocks;
};

Polynomial parse_terms(int dims, const std::vector<TermLine>& lines, const std::string& key) {
  Polynomial poly(dims);
  for (const auto& term : lines) {
    auto parts = split_whitespace(term.text);
    if (static_cast<int>(parts.size()) != dims + 1)
      throw ConfigError("term must be 'coeff' followed by " + std::to_string(dims) + " exponent(s)", term.line, key);
    Rational coeff;
    try {
      coeff = parse_rational(parts[0]);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), term.line, key);
    }
    Exponents exponents{};
    for (int d = 0; d < dims; ++d) {
      auto power = parse_integer<int>(parts[static_cast<std::size_t>(d + 1)]);
      if (!power || *power < 0 || *power > 64)
        throw ConfigError("exponent must be an integer in [0, 64]", term.line, key);
      exponents[static_cast<std::size_t>(d)] = *power;
    }
    poly.add_term(exponents, coeff);
  }
  return poly;
}

std::vector<Rational> parse_rational_list(const std::pair<int, std::string>& entry, const std::string& key, int dims) {
  std::vector<Rational> out;
  for (auto part : split_whitespace(entry.second)) {
    try {
      out.push_back(parse_rational(part));
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), entry.first, key);
    }
  }
  if (static_cast<int>(out.size()) != dims)
    throw ConfigError("expected " + std::to_string(dims) + " value(s)", entry.first, key);
  return out;
}

int parse_dims(const Section& section, int fallback) {
  auto it = section.values.find("dims");
  if (it == section.values.end()) return fallback;
  auto dims = parse_integer<int>(it->second.second);
  if (!dims || *dims < 1 || *dims > kMaxDims) throw ConfigError("dims must be 1 or 2", it->second.first, "dims");
  return *dims;
}

void reject_unknown(const Section& section, const std::string& name, std::initializer_list<std::string_view> keys,
                    std::initializer_list<std::string_view> block_keys) {
  for (const auto& [key, entry] : section.values)
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("unknown key in [" + name + "]", entry.first, key);
  for (const auto& [key, entry] : section.blocks)
    if (std::find(block_keys.begin(), block_keys.end(), key) == block_keys.end())
      throw ConfigError("unknown block in [" + name + "]", entry.first, key);
}

}  // namespace

TimeGrid TimeGrid::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw ConfigError("time grid must be START:STOP:COUNT, got '" + std::string(text) + "'", 0, "t");
  auto a = parse_double(parts[0]);
  auto b = parse_double(parts[1]);
  auto n = parse_integer<int>(parts[2]);
  if (!a || !b || !n) throw ConfigError("time grid must be START:STOP:COUNT, got '" + std::string(text) + "'", 0, "t");
  TimeGrid grid{*a, *b, *n};
  grid.validate();
  return grid;
}

void TimeGrid::validate() const {
  if (count < 2) throw ConfigError("time grid needs COUNT >= 2", 0, "t");
  if (!(stop > start)) throw ConfigError("time grid needs STOP > START", 0, "t");
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(start + (stop - start) * i / (count - 1));
  return out;
}

OrderRange OrderRange::parse(std::string_view text) {
  text = trim(text);
  OrderRange range;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    auto a = parse_integer<int>(text.substr(0, dots));
    auto b = parse_integer<int>(text.substr(dots + 2));
    if (!a || !b) throw ConfigError("order range must be A..B, got '" + std::string(text) + "'", 0, "N");
    range = {*a, *b};
  } else {
    auto a = parse_integer<int>(text);
    if (!a) throw ConfigError("order must be an integer or A..B, got '" + std::string(text) + "'", 0, "N");
    range = {*a, *a};
  }
  if (range.first < 1 || range.last < range.first || range.last > 12)
    throw ConfigError("order range must satisfy 1 <= A <= B <= 12", 0, "N");
  return range;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("format must be csv or json, got '" + std::string(text) + "'", 0, "format");
}

const PolynomialHamiltonian& RunConfig::model() const {
  if (!hamiltonian) throw ConfigError("no model given (use --model NAME or a [model] section)", 0, "model");
  return *hamiltonian;
}

const GaussianPolyState& RunConfig::state() const {
  if (!trial) throw ConfigError("no trial state given (use --model NAME or a [trial] section)", 0, "trial");
  return *trial;
}

void select_catalog_model(RunConfig& config, std::string_view name) {
  const CatalogEntry& entry = catalog_entry(name);
  config.model_name = entry.name;
  config.hamiltonian = entry.hamiltonian;
  config.trial = entry.trial;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  std::string block_key;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const bool indented = !raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()));
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (indented && !block_key.empty()) {
      sections[current].blocks[block_key].second.push_back({line_no, std::string(line)});
      continue;
    }
    block_key.clear();
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "model" && current != "trial" && current != "run")
        throw ConfigError("unknown section (expected model, trial or run)", line_no, current);
      sections[current];
      continue;
    }
    if (current.empty()) throw ConfigError("key outside of a section", line_no);
    if (line.back() == ':') {
      block_key = std::string(trim(line.substr(0, line.size() - 1)));
      sections[current].blocks[block_key] = {line_no, {}};
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value' or 'key:'", line_no);
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (value.empty()) throw ConfigError("empty value", line_no, key);
    sections[current].values[key] = {line_no, value};
  }

  RunConfig config;
  auto rethrow_at = [](const ConfigError& e, int line, const std::string& key) {
    std::string message = e.what();
    if (auto bracket = message.find("] "); !e.key().empty() && bracket != std::string::npos)
      message = message.substr(bracket + 2);
    return ConfigError(message, line, key);
  };

  if (auto it = sections.find("model"); it != sections.end()) {
    const Section& model = it->second;
    reject_unknown(model, "model", {"name", "dims"}, {"potential"});
    if (auto name = model.values.find("name"); name != model.values.end()) {
      try {
        select_catalog_model(config, name->second.second);
      } catch (const ConfigError& e) {
        if (!model.blocks.count("potential")) throw rethrow_at(e, name->second.first, "name");
        config.model_name = name->second.second;
      }
    }
    if (auto potential = model.blocks.find("potential"); potential != model.blocks.end()) {
      const int dims = parse_dims(model, 1);
      if (potential->second.second.empty()) throw ConfigError("potential block has no terms", potential->second.first, "potential");
      config.hamiltonian = PolynomialHamiltonian{parse_terms(dims, potential->second.second, "potential")};
      if (!model.values.count("name")) config.model_name = "custom";
      if (auto warning = config.hamiltonian->boundedness_warning()) config.warnings.push_back(*warning);
    }
  }

  if (auto it = sections.find("trial"); it != sections.end()) {
    const Section& trial = it->second;
    reject_unknown(trial, "trial", {"dims", "gauss", "lin", "normalize"}, {"poly"});
    const int dims = parse_dims(trial, config.hamiltonian ? config.hamiltonian->dims() : 1);
    auto gauss = trial.values.find("gauss");
    if (gauss == trial.values.end()) throw ConfigError("trial needs 'gauss' exponents", 0, "gauss");
    auto quad = parse_rational_list(gauss->second, "gauss", dims);
    std::vector<Rational> lin;
    if (auto l = trial.values.find("lin"); l != trial.values.end()) lin = parse_rational_list(l->second, "lin", dims);
    Polynomial poly = Polynomial::constant(dims, 1);
    if (auto p = trial.blocks.find("poly"); p != trial.blocks.end()) {
      poly = parse_terms(dims, p->second.second, "poly");
      if (poly.is_zero()) throw ConfigError("trial polynomial is zero", p->second.first, "poly");
    }
    try {
      config.trial = GaussianPolyState::make(poly, quad, lin);
    } catch (const Error& e) {
      throw ConfigError(e.what(), gauss->second.first, "gauss");
    }
    if (auto n = trial.values.find("normalize"); n == trial.values.end() || n->second.second != "false")
      config.trial = normalize(*config.trial);
    if (config.model_name != "custom" && config.hamiltonian) config.model_name += "+custom-trial";
  }

  if (auto it = sections.find("run"); it != sections.end()) {
    const Section& run = it->second;
    reject_unknown(run, "run", {"N", "t", "format", "precision", "seed", "J", "out"}, {});
    for (const auto& [key, entry] : run.values) {
      const auto& [line, value] = entry;
      try {
        if (key == "N") config.orders = OrderRange::parse(value);
        else if (key == "t") config.t_grid = TimeGrid::parse(value);
        else if (key == "format") config.format = parse_format(value);
        else if (key == "precision") config.precision = Precision::parse(value);
        else if (key == "out") config.out_path = value;
        else if (key == "seed") {
          auto seed = parse_integer<std::uint64_t>(value);
          if (!seed) throw ConfigError("seed must be a non-negative integer");
          config.seed = *seed;
        } else if (key == "J") {
          auto j = parse_integer<int>(value);
          if (!j || *j < 1 || *j > 40) throw ConfigError("J must be an integer in [1, 40]");
          config.highest_moment = *j;
        }
      } catch (const ConfigError& e) {
        throw rethrow_at(e, line, key);
      }
    }
  }
  if (config.hamiltonian && config.trial && config.hamiltonian->dims() != config.trial->dims())
    throw ConfigError("model and trial dimensions differ", 0, "dims");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace cmx
