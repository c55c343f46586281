#include "qdm/observables.hpp"

#include <cmath>
#include <set>

#include "qdm/errors.hpp"

namespace qdm {

std::string_view to_string(Collector collector) noexcept {
  return collector == Collector::Detector ? "detector" : "system";
}

void CurrentSpec::validate(const StateSpace& space) const {
  std::set<std::string_view> seen;
  for (const auto& term : terms) {
    if (!space.population_index(term.label)) {
      throw SpecError("current spec names state '" + term.label + "' absent from " +
                      std::string(to_string(space.kind())));
    }
    if (!seen.insert(term.label).second) {
      throw SpecError("current spec lists state '" + term.label + "' twice");
    }
    if (!(term.width >= 0.0) || !std::isfinite(term.width)) {
      throw SpecError("current spec width for '" + term.label + "' must be non-negative");
    }
  }
}

CurrentSpec system_current(const SingleDotDetectorParams& p) {
  return {{{"b", p.Gamma_R}, {"b'", p.Gamma_Rp}}, Collector::System};
}

CurrentSpec detector_current(const SingleDotDetectorParams& p) {
  return {{{"a'", p.gamma_R}, {"b'", p.gamma_Rp}}, Collector::Detector};
}

CurrentSpec system_current(const DoubleDotParams& p) {
  return {{{"c", p.Gamma_R}}, Collector::System};
}

CurrentSpec reduced_system_current(const DoubleDotParams& p) {
  return {{{"cbar", p.Gamma_R}}, Collector::System};
}

CurrentSpec system_current(const DoubleDotDetectorParams& p) {
  return {{{"c", p.dots.Gamma_R}, {"c'", p.dots.Gamma_R}}, Collector::System};
}

CurrentSpec detector_current(const DoubleDotDetectorParams& p) {
  // Right-lead exit width of the detector electron, matching the generator.
  const auto [open_b, open_c] = regime_flags(p.regime);
  const bool open_a = p.regime != DetectorRegime::AlwaysBlocked;
  auto right = [&](bool open) { return open ? p.gamma_R : p.gamma_Rp; };
  return {{{"a'", right(open_a)}, {"b'", right(open_b)}, {"c'", right(open_c)}},
          Collector::Detector};
}

double current(const DensityVector& state, const CurrentSpec& spec) {
  spec.validate(state.space());
  double sum = 0.0;
  for (const auto& term : spec.terms) sum += term.width * state.population(term.label);
  return sum;
}

std::vector<double> accumulated_charge(const Trajectory& traj, const CurrentSpec& spec) {
  std::vector<double> q;
  if (traj.size() == 0) return q;
  spec.validate(traj.states.front().space());
  q.reserve(traj.size());
  q.push_back(0.0);
  double prev = current(traj.states.front(), spec);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double now = current(traj.states[k], spec);
    q.push_back(q.back() + 0.5 * (prev + now) * (traj.times[k] - traj.times[k - 1]));
    prev = now;
  }
  return q;
}

std::vector<double> coherence_envelope(const Trajectory& traj, const CoherencePair& pair) {
  std::vector<double> env;
  env.reserve(traj.size());
  for (const auto& s : traj.states) env.push_back(std::abs(s.coherence(pair)));
  return env;
}

}  // namespace qdm
