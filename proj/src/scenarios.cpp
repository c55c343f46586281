#include "qdm/scenarios.hpp"

#include <cmath>
#include <map>

#include "qdm/analytics.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/errors.hpp"
#include "qdm/models.hpp"
#include "qdm/observables.hpp"
#include "qdm/reduction.hpp"

namespace qdm {

namespace {

struct ScenarioSpec {
  ParamMap defaults;
  // detector-occupied keys that copy their partner unless overridden
  std::vector<std::pair<std::string, std::string>> copies;
};

const std::map<std::string, ScenarioSpec, std::less<>>& specs() {
  static const std::map<std::string, ScenarioSpec, std::less<>> table = {
      {"fig3",
       {{{"Gamma_L", 1.0}, {"Gamma_R", 1.0}, {"Omega", 1.0}, {"gamma_L", 50.0},
         {"detector_ratio", 1000.0}, {"E0", 0.0}, {"U1", 3.0}, {"U2", 1.5}, {"points", 121.0}},
        {{"Gamma_Lp", "Gamma_L"}, {"Omega_p", "Omega"}, {"gamma_Lp", "gamma_L"}}}},
      {"zeno",
       {{{"Gamma_L", 1.0}, {"Gamma_R", 1.0}, {"Omega", 1.0}, {"epsilon", 0.0},
         {"gamma_L_min", 0.0}, {"gamma_L_max", 100.0}, {"points", 20.0}},
        {}}},
      {"noninvasive",
       {{{"Gamma_L", 1.0}, {"Gamma_R", 1.0}, {"gamma_L", 1.0}, {"ratio_min", 1.0},
         {"ratio_max", 1000.0}, {"points", 7.0}},
        {{"Gamma_Lp", "Gamma_L"}, {"Gamma_Rp", "Gamma_R"}, {"gamma_Lp", "gamma_L"}}}},
      {"reduction",
       {{{"Gamma_L", 1.0}, {"Gamma_R", 1.0}, {"Gamma_Lp", 0.5}, {"Omega", 1.0}, {"epsilon", 0.0},
         {"gamma_L", 1.0}, {"U1", 3.0}, {"U2", 1.5}, {"ratio", 1000.0}, {"ratio_min", 10.0},
         {"ratio_max", 1e4}, {"points", 4.0}, {"horizon", 20.0}, {"npoints", 401.0}},
        {{"Omega_p", "Omega"}, {"gamma_Lp", "gamma_L"}}}},
  };
  return table;
}

const ScenarioSpec& spec_for(std::string_view name) {
  auto it = specs().find(name);
  if (it == specs().end()) {
    std::string known;
    for (const auto& n : scenario_names()) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("unknown scenario '" + std::string(name) + "' (known: " + known + ")");
  }
  return it->second;
}

ParamMap resolve(std::string_view name, const ParamMap& overrides) {
  const ScenarioSpec& spec = spec_for(name);
  ParamMap params = spec.defaults;
  for (const auto& [key, value] : overrides) {
    bool known = spec.defaults.count(key) > 0;
    for (const auto& [primed, _] : spec.copies) known = known || primed == key;
    if (!known) {
      throw ValidationError("scenario " + std::string(name) + " has no parameter '" + key + "'");
    }
    params[key] = value;
  }
  for (const auto& [primed, source] : spec.copies) {
    if (!params.count(primed)) params[primed] = params.at(source);
  }
  return params;
}

std::size_t points(const ParamMap& params, std::string_view key = "points") {
  const double v = params.find(key)->second;
  if (!(v >= 2.0) || v != std::floor(v)) {
    throw ValidationError(std::string(key) + " must be an integer >= 2");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  out.back() = b;
  return out;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  if (!(a > 0.0 && b > 0.0)) throw ValidationError("log ladder needs positive end points");
  std::vector<double> out = linspace(std::log10(a), std::log10(b), n);
  for (auto& v : out) v = std::pow(10.0, v);
  out.front() = a;
  out.back() = b;
  return out;
}

std::string fmt(double v) { return format_double(v); }

ScenarioResult fig3(const ParamMap& p) {
  const DoubleDotParams dots{p.at("Gamma_L"), p.at("Gamma_R"), p.at("Omega"), 0.0};
  const double i0 = double_dot_dc(dots);
  const double e0 = p.at("E0"), u1 = p.at("U1"), u2 = p.at("U2");

  // Detector Fermi energy must stay above the bare detector level.
  double lo = e0 + u2 - 1.0;
  if (lo <= e0) lo = u2 > 0.0 ? e0 + 0.5 * u2 : e0 + 1e-3;
  const double hi = e0 + u1 + 1.0;

  DoubleDotDetectorParams base;
  base.dots = dots;
  base.Gamma_Lp = p.at("Gamma_Lp");
  base.Omega_p = p.at("Omega_p");
  base.gamma_L = p.at("gamma_L");
  base.gamma_Lp = p.at("gamma_Lp");
  base.gamma_R = p.at("detector_ratio") * base.gamma_L;
  base.gamma_Rp = base.gamma_R;
  base.U1 = u1;
  base.U2 = u2;

  ScenarioResult out;
  out.table.header = {"EF_det [Gamma0]", "regime", "I_S [e*Gamma0]", "I_S0 [e*Gamma0]",
                      "I_S/I_S0 [1]", "segment"};
  double plateau = std::nan("");
  for (double ef : linspace(lo, hi, points(p))) {
    EnergyConfig e{e0, 0.0, 0.0, u1, u2, ef, 1.0};
    DoubleDotDetectorParams q = base;
    q.regime = classify_regime(e);
    const double is = current(steady_state(build_double_dot_detector(q)), system_current(q));
    const bool extension = q.regime == DetectorRegime::NeverBlocked;
    if (q.regime == DetectorRegime::BlockedByDot1) plateau = is / i0;
    out.table.rows.push_back({ef, std::string(to_string(q.regime)), is, i0, is / i0,
                              std::string(extension ? "extension" : "modeled")});
  }
  out.summary = {"I_S0: " + fmt(i0), "blocked_by_dot1_ratio: " + fmt(plateau),
                 "blocked_by_dot1_closed_form_ratio: " +
                     fmt(dephased_double_dot_dc(dots, base.gamma_L) / i0)};
  return out;
}

ScenarioResult zeno(const ParamMap& p) {
  const DoubleDotParams dots{p.at("Gamma_L"), p.at("Gamma_R"), p.at("Omega"), p.at("epsilon")};
  ScenarioResult out;
  out.table.header = {"gamma_L [Gamma0]", "I_S [e*Gamma0]", "I_S_closed_form [e*Gamma0]"};
  for (double g : linspace(p.at("gamma_L_min"), p.at("gamma_L_max"), points(p))) {
    const double is =
        current(steady_state(build_reduced_double_dot(dots, g)), reduced_system_current(dots));
    out.table.rows.push_back({g, is, dephased_double_dot_dc(dots, g)});
  }
  out.summary = {"I_S0: " + fmt(double_dot_dc(dots))};
  return out;
}

ScenarioResult noninvasive(const ParamMap& p) {
  SingleDotDetectorParams base;
  base.Gamma_L = p.at("Gamma_L");
  base.Gamma_R = p.at("Gamma_R");
  base.Gamma_Lp = p.at("Gamma_Lp");
  base.Gamma_Rp = p.at("Gamma_Rp");
  base.gamma_L = p.at("gamma_L");
  base.gamma_Lp = p.at("gamma_Lp");
  const double i0 = single_dot_dc(base.Gamma_L, base.Gamma_R);
  const double expected_ratio = base.gamma_L / base.Gamma_L;

  ScenarioResult out;
  out.table.header = {"ratio [1]",       "I_S [e*Gamma0]",      "I_D [e*Gamma0]",
                      "I_D/I_S [1]",     "gamma_L/Gamma_L [1]", "I_S0 [e*Gamma0]"};
  for (double r : logspace(p.at("ratio_min"), p.at("ratio_max"), points(p))) {
    SingleDotDetectorParams q = base;
    q.gamma_R = r * q.gamma_L;
    q.gamma_Rp = q.gamma_R;
    const DensityVector x = steady_state(build_single_dot_detector(q));
    const double is = current(x, system_current(q));
    const double id = current(x, detector_current(q));
    out.table.rows.push_back({r, is, id, id / is, expected_ratio, i0});
  }
  out.summary = {"I_S0: " + fmt(i0), "gamma_L/Gamma_L: " + fmt(expected_ratio)};
  return out;
}

ScenarioResult reduction(const ParamMap& p) {
  DoubleDotDetectorParams q;
  q.dots = {p.at("Gamma_L"), p.at("Gamma_R"), p.at("Omega"), p.at("epsilon")};
  q.Gamma_Lp = p.at("Gamma_Lp");
  q.Omega_p = p.at("Omega_p");
  q.gamma_L = p.at("gamma_L");
  q.gamma_Lp = p.at("gamma_Lp");
  q.gamma_R = p.at("ratio") * q.gamma_L;
  q.gamma_Rp = q.gamma_R;
  q.U1 = p.at("U1");
  q.U2 = p.at("U2");
  q.regime = DetectorRegime::BlockedByDot1;

  ReductionOptions options;
  options.npoints = points(p, "npoints");
  options.ladder = logspace(p.at("ratio_min"), p.at("ratio_max"), points(p));
  const ReductionReport report = compare_reduction(q, p.at("horizon"), options);

  ScenarioResult out;
  out.table.header = {"ratio [1]", "max_state_discrepancy [1]",
                      "steady_current_discrepancy [e*Gamma0]", "I_full [e*Gamma0]",
                      "I_reduced [e*Gamma0]"};
  for (const auto& rung : report.ladder) {
    out.table.rows.push_back({rung.gamma_ratio, rung.max_state_discrepancy,
                              rung.steady_current_discrepancy, rung.full_current,
                              rung.reduced_current});
  }
  out.summary = {"gamma_ratio: " + fmt(report.gamma_ratio),
                 "max_state_discrepancy: " + fmt(report.max_state_discrepancy),
                 "steady_current_discrepancy: " + fmt(report.steady_current_discrepancy),
                 "scaling_exponent: " + fmt(report.scaling_exponent),
                 "current_scaling_exponent: " + fmt(report.current_scaling_exponent)};
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"fig3", "zeno", "noninvasive", "reduction"};
  return names;
}

ParamMap scenario_defaults(std::string_view name) { return spec_for(name).defaults; }

ScenarioResult run_scenario(std::string_view name, const ParamMap& overrides) {
  const ParamMap params = resolve(name, overrides);
  if (name == "fig3") return fig3(params);
  if (name == "zeno") return zeno(params);
  if (name == "noninvasive") return noninvasive(params);
  return reduction(params);
}

}  // namespace qdm
