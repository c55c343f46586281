#include "qdm/runner.hpp"

#include <algorithm>
#include <cmath>

#include "qdm/errors.hpp"

namespace qdm {

namespace {

double get(const ParamMap& params, std::string_view key) {
  auto it = params.find(key);
  if (it == params.end()) throw ValidationError("missing parameter '" + std::string(key) + "'");
  return it->second;
}

double get_or(const ParamMap& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

DoubleDotParams dots_from(const ParamMap& params) {
  return {get(params, "Gamma_L"), get(params, "Gamma_R"), get(params, "Omega"),
          get_or(params, "epsilon", 0.0)};
}

DetectorRegime resolve_regime(const ParamMap& params, std::optional<DetectorRegime> explicit_regime) {
  if (explicit_regime) return *explicit_regime;
  if (!params.count("EF_det")) return DetectorRegime::BlockedByDot1;
  EnergyConfig e;
  e.E0 = get_or(params, "E0", 0.0);
  e.E1 = get_or(params, "E1", 0.0);
  e.E2 = e.E1 + get_or(params, "epsilon", 0.0);
  e.U1 = get_or(params, "U1", 0.0);
  e.U2 = get_or(params, "U2", 0.0);
  e.EF_det = get(params, "EF_det");
  e.EF_sys = get_or(params, "EF_sys", e.E1 + 1.0);
  return classify_regime(e);
}

std::vector<std::string> component_headers(const StateSpace& space) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < space.dim_real(); ++i) out.push_back(space.component_name(i) + " [1]");
  return out;
}

void push_components(std::vector<Cell>& row, const DensityVector& x) {
  for (Eigen::Index i = 0; i < x.dim(); ++i) row.emplace_back(x.values()(i));
}

}  // namespace

std::string unit_of(std::string_view parameter) {
  if (parameter == "ratio") return "[1]";
  return "[Gamma0]";
}

ModelInstance instantiate(ModelKind kind, const ParamMap& params,
                          std::optional<DetectorRegime> explicit_regime) {
  switch (kind) {
    case ModelKind::SingleDotDetector: {
      SingleDotDetectorParams p;
      p.Gamma_L = get(params, "Gamma_L");
      p.Gamma_R = get(params, "Gamma_R");
      p.gamma_L = get(params, "gamma_L");
      p.gamma_R = get(params, "gamma_R");
      p.Gamma_Lp = get_or(params, "Gamma_Lp", p.Gamma_L);
      p.Gamma_Rp = get_or(params, "Gamma_Rp", p.Gamma_R);
      p.gamma_Lp = get_or(params, "gamma_Lp", p.gamma_L);
      p.gamma_Rp = get_or(params, "gamma_Rp", p.gamma_R);
      return {build_single_dot_detector(p), system_current(p), detector_current(p), std::nullopt,
              std::nullopt};
    }
    case ModelKind::DoubleDot: {
      const DoubleDotParams p = dots_from(params);
      return {build_double_dot(p), system_current(p), std::nullopt, CoherencePair{"b", "c"},
              std::nullopt};
    }
    case ModelKind::Reduced: {
      const DoubleDotParams p = dots_from(params);
      return {build_reduced_double_dot(p, get(params, "gamma_L")), reduced_system_current(p),
              std::nullopt, CoherencePair{"bbar", "cbar"}, std::nullopt};
    }
    case ModelKind::DoubleDotDetector: {
      DoubleDotDetectorParams p;
      p.dots = dots_from(params);
      p.gamma_L = get(params, "gamma_L");
      p.gamma_R = get(params, "gamma_R");
      p.Gamma_Lp = get_or(params, "Gamma_Lp", p.dots.Gamma_L);
      p.Omega_p = get_or(params, "Omega_p", p.dots.Omega);
      p.gamma_Lp = get_or(params, "gamma_Lp", p.gamma_L);
      p.gamma_Rp = get_or(params, "gamma_Rp", p.gamma_R);
      p.U1 = get_or(params, "U1", 0.0);
      p.U2 = get_or(params, "U2", 0.0);
      p.regime = resolve_regime(params, explicit_regime);
      return {build_double_dot_detector(p), system_current(p), detector_current(p),
              CoherencePair{"b", "c"}, p.regime};
    }
  }
  throw ValidationError("unknown model kind");
}

Table run_evolve(const RunConfig& cfg) {
  const ModelInstance m = instantiate(cfg.model, cfg.params, cfg.regime);
  const StateSpace& space = m.generator.space();
  const DensityVector start = cfg.evolve.initial ? DensityVector::pure(space, *cfg.evolve.initial)
                                                 : DensityVector::all_empty(space);
  const auto grid = uniform_grid(0.0, cfg.evolve.tmax, cfg.evolve.npoints);
  const Trajectory traj = evolve(m.generator, start, grid, cfg.evolve.method, cfg.evolve.tol);
  const auto charge = accumulated_charge(traj, m.system);

  Table table;
  table.header.push_back("t [1/Gamma0]");
  for (auto& h : component_headers(space)) table.header.push_back(std::move(h));
  table.header.push_back("I_S [e*Gamma0]");
  if (m.detector) table.header.push_back("I_D [e*Gamma0]");
  table.header.push_back("Q_S [e]");

  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<Cell> row;
    row.emplace_back(traj.times[k]);
    push_components(row, traj.states[k]);
    row.emplace_back(current(traj.states[k], m.system));
    if (m.detector) row.emplace_back(current(traj.states[k], *m.detector));
    row.emplace_back(charge[k]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table run_steady(const RunConfig& cfg) {
  const ModelInstance m = instantiate(cfg.model, cfg.params, cfg.regime);
  const DensityVector x = steady_state(m.generator);

  Table table;
  table.header = component_headers(x.space());
  table.header.push_back("I_S [e*Gamma0]");
  if (m.detector) table.header.push_back("I_D [e*Gamma0]");
  table.header.push_back("regime");

  std::vector<Cell> row;
  push_components(row, x);
  row.emplace_back(current(x, m.system));
  if (m.detector) row.emplace_back(current(x, *m.detector));
  row.emplace_back(m.regime ? std::string(to_string(*m.regime)) : std::string("n/a"));
  table.rows.push_back(std::move(row));
  return table;
}

Table run_sweep(const RunConfig& cfg) {
  const std::string& name = cfg.sweep.parameter;
  const bool has_detector = cfg.model == ModelKind::SingleDotDetector ||
                            cfg.model == ModelKind::DoubleDotDetector;
  const auto& copies = default_copies(cfg.model);

  Table table;
  table.header = {name + " " + unit_of(name), "I_S [e*Gamma0]"};
  if (has_detector) table.header.push_back("I_D [e*Gamma0]");
  table.header.push_back("|coherence| [1]");
  table.header.push_back("regime");

  for (double value : cfg.sweep.values()) {
    ParamMap params = cfg.params;
    params[name] = value;
    // Primed widths that were defaulted follow their unprimed partner.
    for (const auto& [primed, source] : copies) {
      if (source == name &&
          std::find(cfg.copied.begin(), cfg.copied.end(), primed) != cfg.copied.end()) {
        params[primed] = value;
      }
    }
    const ModelInstance m = instantiate(cfg.model, params, cfg.regime);
    const DensityVector x = steady_state(m.generator);

    std::vector<Cell> row;
    row.emplace_back(value);
    row.emplace_back(current(x, m.system));
    if (m.detector) row.emplace_back(current(x, *m.detector));
    row.emplace_back(m.pair ? std::abs(x.coherence(*m.pair)) : 0.0);
    row.emplace_back(m.regime ? std::string(to_string(*m.regime)) : std::string("n/a"));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qdm
