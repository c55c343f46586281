#pragma once

#include <vector>

#include "qdm/dynamics.hpp"
#include "qdm/models.hpp"

namespace qdm {

// Partial trace over the detector: (a, b, c, a', b', c') -> (abar, bbar, cbar)
// with sigma_bc + sigma_b'c' as the surviving coherence.
DensityVector trace_detector(const DensityVector& full);

struct ReductionRung {
  double gamma_ratio;                 // gamma_R / gamma_L
  double max_state_discrepancy;       // sup_t max_i |traced full - reduced|
  double steady_current_discrepancy;  // |I_full - I_reduced|
  double full_current;
  double reduced_current;
};

struct ReductionReport {
  double gamma_ratio = 0.0;
  double max_state_discrepancy = 0.0;
  double steady_current_discrepancy = 0.0;
  // Slopes of log(discrepancy) vs log(gamma_ratio) over the ladder; NaN when
  // the ladder is empty or the discrepancies vanish to round-off.
  double scaling_exponent = 0.0;
  double current_scaling_exponent = 0.0;
  std::vector<ReductionRung> ladder;
};

struct ReductionOptions {
  std::size_t npoints = 401;
  // gamma_R / gamma_L values; gamma_Rp is scaled along keeping gamma_Rp / gamma_R.
  std::vector<double> ladder = {1e1, 1e2, 1e3, 1e4};
};

/// Evolves the full detector model and the reduced double dot from the empty
/// state over [0, horizon], maps the former through trace_detector and
/// compares trajectories and stationary currents.
///
/// Requires regime BlockedByDot1 and gamma_R > 0; the ladder also needs
/// gamma_L > 0.
ReductionReport compare_reduction(const DoubleDotDetectorParams& p, double horizon,
                                  const ReductionOptions& options = {});

// Single comparison at the parameters as given.
ReductionRung compare_once(const DoubleDotDetectorParams& p, double horizon, std::size_t npoints);

}  // namespace qdm
