#pragma once

#include "qdm/models.hpp"

// Closed-form dc currents (units e*Gamma0).
namespace qdm {

// Gamma_L Gamma_R / (Gamma_L + Gamma_R). Both widths zero is undefined.
double single_dot_dc(double Gamma_L, double Gamma_R);

// Resonant current through the bare double dot,
// Gamma_R Omega^2 / (eps^2 + Gamma_R^2/4 + Omega^2 (2 + Gamma_R/Gamma_L)).
double double_dot_dc(const DoubleDotParams& p);

// Stationary current of the reduced double dot whose coherence dephases at
// Gd = (Gamma_R + gamma_L) / 2:
//   I = Gamma_R / (2 + Gamma_R/Gamma_L + Gamma_R (Gd^2 + eps^2) / (2 Omega^2 Gd)).
// Returns 0 for Omega = 0.
double dephased_double_dot_dc(const DoubleDotParams& p, double gamma_L);

}  // namespace qdm
