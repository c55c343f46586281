#include "qdm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "qdm/errors.hpp"

namespace qdm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::set<std::string, std::less<>> kSections = {"model", "params", "run"};

struct ModelKeys {
  std::vector<std::string> required;
  // optional key -> key whose value it copies when absent
  std::vector<std::pair<std::string, std::string>> copies;
  std::vector<std::pair<std::string, double>> defaults;
  std::vector<std::string> optional;  // no default, may stay absent
};

const ModelKeys& keys_for(ModelKind kind) {
  static const ModelKeys single{
      {"Gamma_L", "Gamma_R", "gamma_L", "gamma_R"},
      {{"Gamma_Lp", "Gamma_L"}, {"Gamma_Rp", "Gamma_R"}, {"gamma_Lp", "gamma_L"},
       {"gamma_Rp", "gamma_R"}},
      {},
      {}};
  static const ModelKeys dd{{"Gamma_L", "Gamma_R", "Omega"}, {}, {{"epsilon", 0.0}}, {}};
  static const ModelKeys reduced{
      {"Gamma_L", "Gamma_R", "Omega", "gamma_L"}, {}, {{"epsilon", 0.0}}, {}};
  static const ModelKeys ddd{
      {"Gamma_L", "Gamma_R", "Omega", "gamma_L", "gamma_R"},
      {{"Gamma_Lp", "Gamma_L"}, {"Omega_p", "Omega"}, {"gamma_Lp", "gamma_L"},
       {"gamma_Rp", "gamma_R"}},
      {{"epsilon", 0.0}, {"U1", 0.0}, {"U2", 0.0}, {"E0", 0.0}, {"E1", 0.0}},
      {"EF_det", "EF_sys"}};
  switch (kind) {
    case ModelKind::SingleDotDetector: return single;
    case ModelKind::DoubleDot: return dd;
    case ModelKind::Reduced: return reduced;
    case ModelKind::DoubleDotDetector: return ddd;
  }
  return dd;
}

double to_number(std::string_view key, const RawConfig::Entry& e) {
  const std::string_view v = trim(e.value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
    throw ConfigError("value of '" + std::string(key) + "' is not a finite number: '" + e.value +
                          "'",
                      e.line);
  }
  return out;
}

std::size_t to_count(std::string_view key, const RawConfig::Entry& e) {
  const double v = to_number(key, e);
  if (v < 0.0 || v != std::floor(v)) {
    throw ConfigError("value of '" + std::string(key) + "' must be a non-negative integer", e.line);
  }
  return static_cast<std::size_t>(v);
}

const RawConfig::Entry* find(const RawConfig& raw, std::string_view section, std::string_view key) {
  auto s = raw.sections.find(section);
  if (s == raw.sections.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

void reject_unknown(const RawConfig& raw, std::string_view section,
                    const std::set<std::string, std::less<>>& allowed, std::string_view context) {
  auto s = raw.sections.find(section);
  if (s == raw.sections.end()) return;
  for (const auto& [key, entry] : s->second) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in [" + std::string(section) + "]" +
                            std::string(context),
                        entry.line);
    }
  }
}

}  // namespace

std::string_view to_string(RunMode mode) noexcept {
  switch (mode) {
    case RunMode::Evolve: return "evolve";
    case RunMode::Steady: return "steady";
    case RunMode::Sweep: return "sweep";
    case RunMode::Scenario: return "scenario";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept {
  for (auto kind : {ModelKind::SingleDotDetector, ModelKind::DoubleDot,
                    ModelKind::DoubleDotDetector, ModelKind::Reduced}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

const std::vector<std::string>& model_parameters(ModelKind kind) {
  static const auto build = [](ModelKind k) {
    const ModelKeys& keys = keys_for(k);
    std::vector<std::string> names = keys.required;
    for (const auto& [key, _] : keys.copies) names.push_back(key);
    for (const auto& [key, _] : keys.defaults) names.push_back(key);
    for (const auto& key : keys.optional) names.push_back(key);
    return names;
  };
  static const std::vector<std::string> single = build(ModelKind::SingleDotDetector);
  static const std::vector<std::string> dd = build(ModelKind::DoubleDot);
  static const std::vector<std::string> ddd = build(ModelKind::DoubleDotDetector);
  static const std::vector<std::string> reduced = build(ModelKind::Reduced);
  switch (kind) {
    case ModelKind::SingleDotDetector: return single;
    case ModelKind::DoubleDot: return dd;
    case ModelKind::DoubleDotDetector: return ddd;
    case ModelKind::Reduced: return reduced;
  }
  return dd;
}

const std::vector<std::pair<std::string, std::string>>& default_copies(ModelKind kind) {
  return keys_for(kind).copies;
}

std::vector<double> SweepSpec::values() const {
  if (count < 2) throw ValidationError("sweep count must be at least 2");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(count - 1);
    out[k] = scale == SweepScale::Linear
                 ? start + (stop - start) * f
                 : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * f);
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

RawConfig parse_sections(std::string_view text) {
  RawConfig raw;
  std::string current;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
      line = line.substr(0, c);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!kSections.count(name)) {
        throw ConfigError("unknown section [" + name + "] (expected model, params or run)",
                          line_no);
      }
      current = name;
      raw.sections[current];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    if (current.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    auto& section = raw.sections[current];
    if (section.count(key)) {
      throw ConfigError("duplicate key '" + key + "' in [" + current + "]", line_no);
    }
    section[key] = {value, line_no};
  }
  return raw;
}

void apply_override(RawConfig& raw, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' must look like key=value");
  }
  std::string_view key = trim(assignment.substr(0, eq));
  const std::string value(trim(assignment.substr(eq + 1)));
  std::string section = "params";
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    section = std::string(key.substr(0, dot));
    key = key.substr(dot + 1);
  }
  if (!kSections.count(section)) {
    throw ConfigError("override names unknown section '" + section + "'");
  }
  if (key.empty()) throw ConfigError("override has an empty key");
  raw.sections[section][std::string(key)] = {value, 0};
}

RunConfig validate_config(const RawConfig& raw) {
  RunConfig cfg;

  // [run]
  reject_unknown(raw, "run",
                 {"mode", "tmax", "npoints", "tol", "method", "initial", "parameter", "start",
                  "stop", "count", "scale", "scenario"},
                 "");
  if (const auto* e = find(raw, "run", "mode")) {
    const std::string_view m = trim(e->value);
    if (m == "evolve") cfg.mode = RunMode::Evolve;
    else if (m == "steady") cfg.mode = RunMode::Steady;
    else if (m == "sweep") cfg.mode = RunMode::Sweep;
    else if (m == "scenario") cfg.mode = RunMode::Scenario;
    else throw ConfigError("unknown run mode '" + e->value + "'", e->line);
  }

  if (cfg.mode == RunMode::Scenario) {
    const auto* e = find(raw, "run", "scenario");
    if (!e) throw ConfigError("run mode scenario needs key 'scenario'");
    cfg.scenario = std::string(trim(e->value));
    if (auto s = raw.sections.find("params"); s != raw.sections.end()) {
      for (const auto& [key, entry] : s->second) cfg.params[key] = to_number(key, entry);
    }
    return cfg;
  }

  // [model]
  reject_unknown(raw, "model", {"type", "regime"}, "");
  const auto* type = find(raw, "model", "type");
  if (!type) throw ConfigError("missing key 'type' in [model]");
  const auto kind = parse_model_kind(trim(type->value));
  if (!kind) throw ConfigError("unknown model type '" + type->value + "'", type->line);
  cfg.model = *kind;
  if (const auto* r = find(raw, "model", "regime")) {
    if (cfg.model != ModelKind::DoubleDotDetector) {
      throw ConfigError("key 'regime' only applies to double_dot_detector", r->line);
    }
    cfg.regime = parse_regime(trim(r->value));
    if (!cfg.regime) throw ConfigError("unknown regime '" + r->value + "'", r->line);
  }

  // [params]
  const ModelKeys& keys = keys_for(cfg.model);
  const auto& names = model_parameters(cfg.model);
  reject_unknown(raw, "params", {names.begin(), names.end()},
                 " for model " + std::string(to_string(cfg.model)));
  for (const auto& name : names) {
    if (const auto* e = find(raw, "params", name)) cfg.params[name] = to_number(name, *e);
  }
  for (const auto& name : keys.required) {
    if (!cfg.params.count(name)) {
      throw ConfigError("missing required parameter '" + name + "' for model " +
                        std::string(to_string(cfg.model)));
    }
  }
  for (const auto& [name, source] : keys.copies) {
    if (!cfg.params.count(name)) {
      cfg.params[name] = cfg.params.at(source);
      cfg.copied.push_back(name);
    }
  }
  for (const auto& [name, value] : keys.defaults) {
    if (!cfg.params.count(name)) cfg.params[name] = value;
  }

  // mode-specific [run] keys
  auto number = [&](std::string_view key) -> std::optional<double> {
    if (const auto* e = find(raw, "run", key)) return to_number(key, *e);
    return std::nullopt;
  };
  if (cfg.mode == RunMode::Evolve) {
    const auto* tmax = find(raw, "run", "tmax");
    if (!tmax) throw ConfigError("evolve run needs key 'tmax'");
    cfg.evolve.tmax = to_number("tmax", *tmax);
    if (!(cfg.evolve.tmax > 0.0)) throw ConfigError("tmax must be positive", tmax->line);
    if (const auto* e = find(raw, "run", "npoints")) {
      cfg.evolve.npoints = to_count("npoints", *e);
      if (cfg.evolve.npoints < 2) throw ConfigError("npoints must be at least 2", e->line);
    }
    if (auto tol = number("tol")) {
      if (!(*tol > 0.0)) throw ConfigError("tol must be positive", find(raw, "run", "tol")->line);
      cfg.evolve.tol = *tol;
    }
    if (const auto* e = find(raw, "run", "method")) {
      const std::string_view m = trim(e->value);
      if (m == "exact") cfg.evolve.method = Method::Exact;
      else if (m == "adaptive") cfg.evolve.method = Method::Adaptive;
      else throw ConfigError("unknown method '" + e->value + "'", e->line);
    }
    if (const auto* e = find(raw, "run", "initial")) {
      cfg.evolve.initial = std::string(trim(e->value));
      if (!StateSpace::of(cfg.model).population_index(*cfg.evolve.initial)) {
        throw ConfigError("initial state '" + e->value + "' is not a basis state of " +
                              std::string(to_string(cfg.model)),
                          e->line);
      }
    }
  } else if (cfg.mode == RunMode::Sweep) {
    const auto* p = find(raw, "run", "parameter");
    if (!p) throw ConfigError("sweep run needs key 'parameter'");
    cfg.sweep.parameter = std::string(trim(p->value));
    if (std::find(names.begin(), names.end(), cfg.sweep.parameter) == names.end()) {
      throw ConfigError("sweep parameter '" + cfg.sweep.parameter + "' is not valid for model " +
                            std::string(to_string(cfg.model)),
                        p->line);
    }
    for (const char* key : {"start", "stop", "count"}) {
      if (!find(raw, "run", key)) throw ConfigError("sweep run needs key '" + std::string(key) + "'");
    }
    cfg.sweep.start = *number("start");
    cfg.sweep.stop = *number("stop");
    const auto* count = find(raw, "run", "count");
    cfg.sweep.count = to_count("count", *count);
    if (cfg.sweep.count < 2) throw ConfigError("sweep count must be at least 2", count->line);
    if (const auto* e = find(raw, "run", "scale")) {
      const std::string_view s = trim(e->value);
      if (s == "linear") cfg.sweep.scale = SweepScale::Linear;
      else if (s == "log") cfg.sweep.scale = SweepScale::Log;
      else throw ConfigError("unknown sweep scale '" + e->value + "'", e->line);
    }
    if (cfg.sweep.scale == SweepScale::Log && !(cfg.sweep.start > 0.0 && cfg.sweep.stop > 0.0)) {
      throw ConfigError("log sweep needs positive start and stop");
    }
  }
  return cfg;
}

RunConfig parse_config(std::string_view text) { return validate_config(parse_sections(text)); }

}  // namespace qdm
