#include "qdm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdm/errors.hpp"
#include "qdm/numerics.hpp"
#include "qdm/observables.hpp"

namespace qdm {

DensityVector trace_detector(const DensityVector& full) {
  if (full.space().kind() != ModelKind::DoubleDotDetector) {
    throw SpecError("trace_detector expects a double_dot_detector state, got " +
                    std::string(to_string(full.space().kind())));
  }
  DensityVector out(StateSpace::reduced());
  out.set_population("abar", full.population("a") + full.population("a'"));
  out.set_population("bbar", full.population("b") + full.population("b'"));
  out.set_population("cbar", full.population("c") + full.population("c'"));
  out.set_coherence({"bbar", "cbar"}, full.coherence({"b", "c"}) + full.coherence({"b'", "c'"}));
  return out;
}

ReductionRung compare_once(const DoubleDotDetectorParams& p, double horizon, std::size_t npoints) {
  if (p.regime != DetectorRegime::BlockedByDot1) {
    throw ValidationError("reduction comparison is defined for regime blocked_by_dot1");
  }
  if (!(p.gamma_R > 0.0)) throw ValidationError("reduction comparison needs gamma_R > 0");

  const Liouvillian full = build_double_dot_detector(p);
  const Liouvillian reduced = build_reduced_double_dot(p.dots, p.gamma_L);
  const auto grid = uniform_grid(0.0, horizon, npoints);
  const Trajectory tf = evolve(full, DensityVector::all_empty(full.space()), grid);
  const Trajectory tr = evolve(reduced, DensityVector::all_empty(reduced.space()), grid);

  double max_diff = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXd diff = trace_detector(tf.states[k]).values() - tr.states[k].values();
    max_diff = std::max(max_diff, diff.lpNorm<Eigen::Infinity>());
  }

  const double i_full = current(steady_state(full), system_current(p));
  const double i_red = current(steady_state(reduced), reduced_system_current(p.dots));
  const double ratio = p.gamma_L > 0.0 ? p.gamma_R / p.gamma_L
                                       : std::numeric_limits<double>::infinity();
  return {ratio, max_diff, std::abs(i_full - i_red), i_full, i_red};
}

namespace {

// Discrepancies at round-off level carry no scaling information.
double scaling_or_nan(const std::vector<double>& ratios, const std::vector<double>& values) {
  constexpr double floor = 1e-13;
  if (ratios.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  for (double v : values) {
    if (!(v > floor)) return std::numeric_limits<double>::quiet_NaN();
  }
  return loglog_slope(ratios, values);
}

}  // namespace

ReductionReport compare_reduction(const DoubleDotDetectorParams& p, double horizon,
                                  const ReductionOptions& options) {
  if (!(horizon > 0.0)) throw ValidationError("reduction horizon must be positive");
  const ReductionRung base = compare_once(p, horizon, options.npoints);

  ReductionReport report;
  report.gamma_ratio = base.gamma_ratio;
  report.max_state_discrepancy = base.max_state_discrepancy;
  report.steady_current_discrepancy = base.steady_current_discrepancy;
  report.scaling_exponent = std::numeric_limits<double>::quiet_NaN();
  report.current_scaling_exponent = std::numeric_limits<double>::quiet_NaN();
  if (options.ladder.empty()) return report;
  if (!(p.gamma_L > 0.0)) throw ValidationError("a gamma_R/gamma_L ladder needs gamma_L > 0");

  const double rp_over_r = p.gamma_Rp / p.gamma_R;
  std::vector<double> ratios, state_d, current_d;
  for (double ratio : options.ladder) {
    if (!(ratio > 0.0)) throw ValidationError("ladder ratios must be positive");
    DoubleDotDetectorParams q = p;
    q.gamma_R = ratio * p.gamma_L;
    q.gamma_Rp = rp_over_r * q.gamma_R;
    const ReductionRung rung = compare_once(q, horizon, options.npoints);
    report.ladder.push_back(rung);
    ratios.push_back(ratio);
    state_d.push_back(rung.max_state_discrepancy);
    current_d.push_back(rung.steady_current_discrepancy);
  }
  report.scaling_exponent = scaling_or_nan(ratios, state_d);
  report.current_scaling_exponent = scaling_or_nan(ratios, current_d);
  return report;
}

}  // namespace qdm
