#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "qdm/state_space.hpp"

// Rate and Bloch-equation generators for a quantum-dot system measured by a
// nearby detector dot. Units: e = hbar = 1, every rate and energy in units of
// a reference width Gamma0, currents in e*Gamma0.
namespace qdm {

// Level energies, Coulomb shifts and reservoir Fermi energies.
struct EnergyConfig {
  double E0 = 0.0;      // detector level
  double E1 = 0.0;      // measured-system dot 1
  double E2 = 0.0;      // measured-system dot 2
  double U1 = 0.0;      // detector shift when dot 1 is occupied
  double U2 = 0.0;      // detector shift when dot 2 is occupied
  double EF_det = 1.0;  // detector emitter reservoir
  double EF_sys = 1.0;  // system emitter reservoir

  // Requires E0 < EF_det, E1 < EF_sys, U1 >= 0, U2 >= 0.
  void validate() const;
};

enum class DetectorRegime { NeverBlocked, BlockedByDot1, AlwaysBlocked };

// Whether a detector electron may enter while system dot 1 / dot 2 is occupied.
struct RegimeFlags {
  bool open_when_dot1;
  bool open_when_dot2;
};

RegimeFlags regime_flags(DetectorRegime regime) noexcept;
std::string_view to_string(DetectorRegime regime) noexcept;
std::optional<DetectorRegime> parse_regime(std::string_view text) noexcept;

/// Zero-temperature Coulomb-blockade classification of the detector.
///
/// NeverBlocked when EF_det > E0 + U1, BlockedByDot1 when
/// E0 + U2 < EF_det <= E0 + U1, AlwaysBlocked when EF_det <= E0 + U2.
/// A Fermi energy sitting exactly on a shifted level counts as blocked.
DetectorRegime classify_regime(const EnergyConfig& cfg);

// Single dot measured by a detector dot. Primed widths apply while the other
// dot is occupied.
struct SingleDotDetectorParams {
  double Gamma_L = 0.0, Gamma_R = 0.0;    // system
  double Gamma_Lp = 0.0, Gamma_Rp = 0.0;  // system, detector occupied
  double gamma_L = 0.0, gamma_R = 0.0;    // detector
  double gamma_Lp = 0.0, gamma_Rp = 0.0;  // detector, system occupied

  // Primed widths copied from the unprimed ones.
  static SingleDotDetectorParams unprimed(double Gamma_L, double Gamma_R, double gamma_L,
                                          double gamma_R);
  void validate() const;
};

struct DoubleDotParams {
  double Gamma_L = 0.0;  // emitter -> dot 1
  double Gamma_R = 0.0;  // dot 2 -> collector
  double Omega = 0.0;    // interdot hopping
  double epsilon = 0.0;  // E2 - E1

  void validate() const;
};

struct DoubleDotDetectorParams {
  DoubleDotParams dots;
  double Gamma_Lp = 0.0;  // emitter -> dot 1 with the detector occupied
  double Omega_p = 0.0;   // hopping with the detector occupied
  double gamma_L = 0.0, gamma_R = 0.0;
  double gamma_Lp = 0.0, gamma_Rp = 0.0;
  double U1 = 0.0, U2 = 0.0;
  DetectorRegime regime = DetectorRegime::BlockedByDot1;

  // Detector-occupied widths and hopping copied from the unprimed ones.
  static DoubleDotDetectorParams unprimed(const DoubleDotParams& dots, double gamma_L,
                                          double gamma_R,
                                          DetectorRegime regime = DetectorRegime::BlockedByDot1);
  void validate() const;
};

/// Real linear generator of d(sigma)/dt = L sigma over a fixed StateSpace.
class Liouvillian {
 public:
  Liouvillian(const StateSpace& space, Eigen::MatrixXd matrix);

  const StateSpace& space() const noexcept { return *space_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  double operator()(Eigen::Index row, Eigen::Index col) const { return matrix_(row, col); }

 private:
  const StateSpace* space_;
  Eigen::MatrixXd matrix_;
};

// Eqs. for states (a, b, a', b'): 4x4 rate matrix.
Liouvillian build_single_dot_detector(const SingleDotDetectorParams& p);

// Optical Bloch equations of the bare double dot: (aa, bb, cc, Re s, Im s).
Liouvillian build_double_dot(const DoubleDotParams& p);

/// Double dot together with the detector dot: 10x10 generator over
/// (aa, bb, cc, a'a', b'b', c'c', Re s, Im s, Re s', Im s').
///
/// BlockedByDot1 is the transport scheme where the detector is blocked only
/// while dot 1 holds the electron. The other regimes switch the detector
/// entry rate gamma_L on or off per system configuration:
///   - a detector electron in an open configuration leaves to the right with
///     gamma_R, in a blocked one with gamma_Lp + gamma_Rp to both sides;
///   - a lead channel feeds a coherence only when it is open for both states
///     of the pair, with the arithmetic mean of the two widths;
///   - AlwaysBlocked removes every entry term, including from the empty state.
Liouvillian build_double_dot_detector(const DoubleDotDetectorParams& p);

// Bare double dot traced over the detector: coherence dephasing becomes
// (Gamma_R + gamma_L) / 2.
Liouvillian build_reduced_double_dot(const DoubleDotParams& p, double gamma_L);

}  // namespace qdm
