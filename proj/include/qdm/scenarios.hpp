#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdm/config.hpp"
#include "qdm/csv.hpp"

namespace qdm {

struct ScenarioResult {
  Table table;
  std::vector<std::string> summary;  // one "key: value" line per headline number
};

const std::vector<std::string>& scenario_names();

// Keys accepted as overrides by a scenario, with their default values.
ParamMap scenario_defaults(std::string_view name);

/// Runs a named study.
///   fig3         detector Fermi energy sweep across the three blocking regimes
///   zeno         stationary current of the reduced double dot against gamma_L
///   noninvasive  single dot + detector over a gamma_R / gamma_L ladder
///   reduction    traced full model against the reduced model over a ladder
ScenarioResult run_scenario(std::string_view name, const ParamMap& overrides = {});

}  // namespace qdm
