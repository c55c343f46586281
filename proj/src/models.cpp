#include "qdm/models.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qdm/errors.hpp"

namespace qdm {

namespace {

void require_width(const char* name, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ValidationError(std::string(name) + " must be a finite non-negative width, got " +
                          std::to_string(value));
  }
}

void require_finite(const char* name, double value) {
  if (!std::isfinite(value)) throw ValidationError(std::string(name) + " must be finite");
}

// Adds d(Re s)/dt and d(Im s)/dt rows for s' = i eps s + i Omega (p_first - p_second) - d s.
void add_bloch_coherence(Eigen::MatrixXd& m, Eigen::Index re, Eigen::Index first,
                         Eigen::Index second, double omega, double eps, double dephasing) {
  const Eigen::Index im = re + 1;
  m(re, re) -= dephasing;
  m(re, im) -= eps;
  m(im, re) += eps;
  m(im, im) -= dephasing;
  m(im, first) += omega;
  m(im, second) -= omega;
  // i Omega (s - s*) = -2 Omega Im s flows out of `first` into `second`.
  m(first, im) -= 2.0 * omega;
  m(second, im) += 2.0 * omega;
}

// Population transfer from -> to at the given rate.
void add_rate(Eigen::MatrixXd& m, Eigen::Index from, Eigen::Index to, double rate) {
  m(from, from) -= rate;
  m(to, from) += rate;
}

}  // namespace

void EnergyConfig::validate() const {
  for (auto [name, v] : {std::pair{"E0", E0}, {"E1", E1}, {"E2", E2}, {"U1", U1}, {"U2", U2},
                         {"EF_det", EF_det}, {"EF_sys", EF_sys}}) {
    require_finite(name, v);
  }
  if (!(E0 < EF_det)) throw ValidationError("detector level E0 must lie below EF_det");
  if (!(E1 < EF_sys)) throw ValidationError("dot level E1 must lie below EF_sys");
  if (U1 < 0.0) throw ValidationError("U1 must be non-negative");
  if (U2 < 0.0) throw ValidationError("U2 must be non-negative");
}

RegimeFlags regime_flags(DetectorRegime regime) noexcept {
  switch (regime) {
    case DetectorRegime::NeverBlocked: return {true, true};
    case DetectorRegime::BlockedByDot1: return {false, true};
    case DetectorRegime::AlwaysBlocked: return {false, false};
  }
  return {false, false};
}

std::string_view to_string(DetectorRegime regime) noexcept {
  switch (regime) {
    case DetectorRegime::NeverBlocked: return "never_blocked";
    case DetectorRegime::BlockedByDot1: return "blocked_by_dot1";
    case DetectorRegime::AlwaysBlocked: return "always_blocked";
  }
  return "unknown";
}

std::optional<DetectorRegime> parse_regime(std::string_view text) noexcept {
  if (text == "never_blocked") return DetectorRegime::NeverBlocked;
  if (text == "blocked_by_dot1") return DetectorRegime::BlockedByDot1;
  if (text == "always_blocked") return DetectorRegime::AlwaysBlocked;
  return std::nullopt;
}

DetectorRegime classify_regime(const EnergyConfig& cfg) {
  cfg.validate();
  if (cfg.EF_det <= cfg.E0 + cfg.U2) return DetectorRegime::AlwaysBlocked;
  if (cfg.EF_det <= cfg.E0 + cfg.U1) return DetectorRegime::BlockedByDot1;
  return DetectorRegime::NeverBlocked;
}

SingleDotDetectorParams SingleDotDetectorParams::unprimed(double Gamma_L, double Gamma_R,
                                                          double gamma_L, double gamma_R) {
  return {Gamma_L, Gamma_R, Gamma_L, Gamma_R, gamma_L, gamma_R, gamma_L, gamma_R};
}

void SingleDotDetectorParams::validate() const {
  require_width("Gamma_L", Gamma_L);
  require_width("Gamma_R", Gamma_R);
  require_width("Gamma_Lp", Gamma_Lp);
  require_width("Gamma_Rp", Gamma_Rp);
  require_width("gamma_L", gamma_L);
  require_width("gamma_R", gamma_R);
  require_width("gamma_Lp", gamma_Lp);
  require_width("gamma_Rp", gamma_Rp);
}

void DoubleDotParams::validate() const {
  require_width("Gamma_L", Gamma_L);
  require_width("Gamma_R", Gamma_R);
  require_finite("Omega", Omega);
  require_finite("epsilon", epsilon);
}

DoubleDotDetectorParams DoubleDotDetectorParams::unprimed(const DoubleDotParams& dots,
                                                          double gamma_L, double gamma_R,
                                                          DetectorRegime regime) {
  DoubleDotDetectorParams p;
  p.dots = dots;
  p.Gamma_Lp = dots.Gamma_L;
  p.Omega_p = dots.Omega;
  p.gamma_L = gamma_L;
  p.gamma_R = gamma_R;
  p.gamma_Lp = gamma_L;
  p.gamma_Rp = gamma_R;
  p.regime = regime;
  return p;
}

void DoubleDotDetectorParams::validate() const {
  dots.validate();
  require_width("Gamma_Lp", Gamma_Lp);
  require_finite("Omega_p", Omega_p);
  require_width("gamma_L", gamma_L);
  require_width("gamma_R", gamma_R);
  require_width("gamma_Lp", gamma_Lp);
  require_width("gamma_Rp", gamma_Rp);
  require_finite("U1", U1);
  require_finite("U2", U2);
  if (U1 < 0.0 || U2 < 0.0) throw ValidationError("Coulomb shifts U1, U2 must be non-negative");
  if (regime == DetectorRegime::BlockedByDot1 && U1 < U2) {
    throw ValidationError("regime blocked_by_dot1 requires U1 >= U2 (dot 1 must shift the detector "
                          "at least as much as dot 2)");
  }
}

Liouvillian::Liouvillian(const StateSpace& space, Eigen::MatrixXd matrix)
    : space_(&space), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space.dim_real());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ValidationError("generator for " + std::string(to_string(space.kind())) + " must be " +
                          std::to_string(n) + "x" + std::to_string(n));
  }
}

Liouvillian build_single_dot_detector(const SingleDotDetectorParams& p) {
  p.validate();
  enum : Eigen::Index { a, b, ap, bp };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  add_rate(m, a, b, p.Gamma_L);
  add_rate(m, a, ap, p.gamma_L);
  add_rate(m, b, a, p.Gamma_R);
  add_rate(m, ap, a, p.gamma_R);
  add_rate(m, ap, bp, p.Gamma_Lp);
  add_rate(m, bp, ap, p.Gamma_Rp);
  // Detector electron above the Fermi level while the system is occupied:
  // it escapes to either side.
  add_rate(m, bp, b, p.gamma_Lp + p.gamma_Rp);
  return Liouvillian(StateSpace::single_dot_detector(), std::move(m));
}

namespace {

Liouvillian bloch_double_dot(const StateSpace& space, const DoubleDotParams& p, double gamma_L) {
  p.validate();
  require_width("gamma_L", gamma_L);
  enum : Eigen::Index { a, b, c, re };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  add_rate(m, a, b, p.Gamma_L);
  add_rate(m, c, a, p.Gamma_R);
  add_bloch_coherence(m, re, b, c, p.Omega, p.epsilon, 0.5 * (p.Gamma_R + gamma_L));
  return Liouvillian(space, std::move(m));
}

}  // namespace

Liouvillian build_double_dot(const DoubleDotParams& p) {
  return bloch_double_dot(StateSpace::double_dot(), p, 0.0);
}

Liouvillian build_reduced_double_dot(const DoubleDotParams& p, double gamma_L) {
  return bloch_double_dot(StateSpace::reduced(), p, gamma_L);
}

Liouvillian build_double_dot_detector(const DoubleDotDetectorParams& p) {
  p.validate();
  enum : Eigen::Index { a, b, c, ap, bp, cp, re, im, rep, imp };
  const auto [open_b, open_c] = regime_flags(p.regime);
  const bool open_a = p.regime != DetectorRegime::AlwaysBlocked;

  auto entry = [&](bool open) { return open ? p.gamma_L : 0.0; };
  auto exit_total = [&](bool open) { return open ? p.gamma_R : p.gamma_Lp + p.gamma_Rp; };
  auto exit_right = [&](bool open) { return open ? p.gamma_R : p.gamma_Rp; };

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(10, 10);

  // Measured system transport, detector empty and occupied.
  add_rate(m, a, b, p.dots.Gamma_L);
  add_rate(m, c, a, p.dots.Gamma_R);
  add_rate(m, ap, bp, p.Gamma_Lp);
  add_rate(m, cp, ap, p.dots.Gamma_R);

  // Detector entry and exit per system configuration.
  add_rate(m, a, ap, entry(open_a));
  add_rate(m, b, bp, entry(open_b));
  add_rate(m, c, cp, entry(open_c));
  add_rate(m, ap, a, exit_total(open_a));
  add_rate(m, bp, b, exit_total(open_b));
  add_rate(m, cp, c, exit_total(open_c));

  // Coherences dephase at half the total decay rate of their two states.
  const double dephase = 0.5 * (p.dots.Gamma_R + entry(open_b) + entry(open_c));
  const double dephase_p = 0.5 * (p.dots.Gamma_R + exit_total(open_b) + exit_total(open_c));
  add_bloch_coherence(m, re, b, c, p.dots.Omega, p.dots.epsilon, dephase);
  add_bloch_coherence(m, rep, bp, cp, p.Omega_p, p.dots.epsilon - p.U1 + p.U2, dephase_p);

  // Detector exits return the primed coherence to the unprimed one through
  // the right lead, and through the left lead when both states are blocked.
  double feed_down = 0.5 * (exit_right(open_b) + exit_right(open_c));
  if (!open_b && !open_c) feed_down += p.gamma_Lp;
  const double feed_up = (open_b && open_c) ? p.gamma_L : 0.0;
  m(re, rep) += feed_down;
  m(im, imp) += feed_down;
  m(rep, re) += feed_up;
  m(imp, im) += feed_up;

  return Liouvillian(StateSpace::double_dot_detector(), std::move(m));
}

}  // namespace qdm
