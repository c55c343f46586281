#include "qdm/analytics.hpp"

#include <cmath>

#include "qdm/errors.hpp"

namespace qdm {

double single_dot_dc(double Gamma_L, double Gamma_R) {
  if (!(Gamma_L >= 0.0) || !(Gamma_R >= 0.0)) {
    throw ValidationError("single-dot widths must be non-negative");
  }
  if (Gamma_L + Gamma_R == 0.0) {
    throw ValidationError("undefined current: both single-dot widths are zero");
  }
  return Gamma_L * Gamma_R / (Gamma_L + Gamma_R);
}

double double_dot_dc(const DoubleDotParams& p) {
  p.validate();
  if (p.Gamma_L == 0.0) throw ValidationError("undefined current: blocked emitter (Gamma_L = 0)");
  if (p.Gamma_R == 0.0) throw ValidationError("undefined current: blocked collector (Gamma_R = 0)");
  const double omega2 = p.Omega * p.Omega;
  return p.Gamma_R * omega2 /
         (p.epsilon * p.epsilon + 0.25 * p.Gamma_R * p.Gamma_R +
          omega2 * (2.0 + p.Gamma_R / p.Gamma_L));
}

double dephased_double_dot_dc(const DoubleDotParams& p, double gamma_L) {
  p.validate();
  if (!(gamma_L >= 0.0) || !std::isfinite(gamma_L)) {
    throw ValidationError("gamma_L must be a finite non-negative width");
  }
  if (p.Gamma_L == 0.0) throw ValidationError("undefined current: blocked emitter (Gamma_L = 0)");
  if (p.Gamma_R == 0.0) throw ValidationError("undefined current: blocked collector (Gamma_R = 0)");
  if (p.Omega == 0.0) return 0.0;

  const double omega2 = p.Omega * p.Omega;
  const double gd = 0.5 * (p.Gamma_R + gamma_L);
  return p.Gamma_R /
         (2.0 + p.Gamma_R / p.Gamma_L +
          p.Gamma_R * (gd * gd + p.epsilon * p.epsilon) / (2.0 * omega2 * gd));
}

}  // namespace qdm
