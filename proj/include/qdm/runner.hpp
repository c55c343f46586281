#pragma once

#include <optional>

#include "qdm/config.hpp"
#include "qdm/csv.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/models.hpp"
#include "qdm/observables.hpp"

namespace qdm {

// Generator plus the observables that make sense for it.
struct ModelInstance {
  Liouvillian generator;
  CurrentSpec system;
  std::optional<CurrentSpec> detector;
  std::optional<CoherencePair> pair;
  std::optional<DetectorRegime> regime;
};

ModelInstance instantiate(ModelKind kind, const ParamMap& params,
                          std::optional<DetectorRegime> explicit_regime = std::nullopt);

Table run_evolve(const RunConfig& cfg);
Table run_steady(const RunConfig& cfg);
Table run_sweep(const RunConfig& cfg);

// "[Gamma0]" for rates and energies, "[1]" for dimensionless names.
std::string unit_of(std::string_view parameter);

}  // namespace qdm
