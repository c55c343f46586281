#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdm/dynamics.hpp"
#include "qdm/models.hpp"
#include "qdm/state_space.hpp"

namespace qdm {

using ParamMap = std::map<std::string, double, std::less<>>;

// Sectioned key = value text before validation. Lines are kept for messages.
struct RawConfig {
  struct Entry {
    std::string value;
    std::size_t line = 0;  // 0 for command-line overrides
  };
  // section -> key -> entry; sections are "model", "params" and "run".
  std::map<std::string, std::map<std::string, Entry, std::less<>>, std::less<>> sections;
};

enum class RunMode { Evolve, Steady, Sweep, Scenario };
enum class SweepScale { Linear, Log };

std::string_view to_string(RunMode mode) noexcept;

struct EvolveSpec {
  double tmax = 0.0;
  std::size_t npoints = 201;
  double tol = 1e-10;
  Method method = Method::Exact;
  std::optional<std::string> initial;  // start label, all-empty when absent
};

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
  SweepScale scale = SweepScale::Linear;

  std::vector<double> values() const;
};

struct RunConfig {
  ModelKind model = ModelKind::DoubleDot;
  std::optional<DetectorRegime> regime;  // explicit [model] regime
  ParamMap params;                       // defaults applied
  std::vector<std::string> copied;       // keys filled from their unprimed partner
  RunMode mode = RunMode::Steady;
  EvolveSpec evolve;
  SweepSpec sweep;
  std::string scenario;
};

/// Parses [model] / [params] / [run] sections of `key = value` lines.
/// '#' and ';' start comments. Throws ConfigError with the line number.
RawConfig parse_sections(std::string_view text);

// Applies "section.key=value" or "key=value" (taken as a [params] key).
void apply_override(RawConfig& raw, std::string_view assignment);

// Checks keys against the model, fills defaults (detector-occupied widths
// copy their unprimed values) and validates the run section.
RunConfig validate_config(const RawConfig& raw);

RunConfig parse_config(std::string_view text);

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept;

// Parameter names accepted by a model, in canonical order.
const std::vector<std::string>& model_parameters(ModelKind kind);

// (primed key, unprimed key it defaults to) pairs of a model.
const std::vector<std::pair<std::string, std::string>>& default_copies(ModelKind kind);

}  // namespace qdm
