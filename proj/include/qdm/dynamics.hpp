#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdm/models.hpp"
#include "qdm/state_space.hpp"

namespace qdm {

/// Density matrix of the dot system in the real embedding of its StateSpace.
class DensityVector {
 public:
  // All-zero vector.
  explicit DensityVector(const StateSpace& space);
  DensityVector(const StateSpace& space, Eigen::VectorXd values);

  // sigma_xx = 1 for the given label.
  static DensityVector pure(const StateSpace& space, std::string_view label);
  // Default start: everything empty, sigma_aa = 1 (first label).
  static DensityVector all_empty(const StateSpace& space);

  const StateSpace& space() const noexcept { return *space_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  Eigen::Index dim() const noexcept { return values_.size(); }

  double population(std::string_view label) const;
  std::complex<double> coherence(const CoherencePair& pair) const;
  DensityVector& set_population(std::string_view label, double value);
  DensityVector& set_coherence(const CoherencePair& pair, std::complex<double> value);

  double trace() const;

  // Describes the first violated physical-state condition, empty when the
  // state is physical: |trace - 1| <= trace_tol, populations >= -pop_tol and
  // |s_ij|^2 <= p_i p_j + coherence_tol for each pair.
  std::string physical_violation(double trace_tol = 1e-12, double pop_tol = 1e-9,
                                 double coherence_tol = 1e-8) const;

 private:
  const StateSpace* space_;
  Eigen::VectorXd values_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityVector> states;

  std::size_t size() const noexcept { return times.size(); }
};

enum class Method { Exact, Adaptive };

std::string_view to_string(Method method) noexcept;

// npoints equally spaced times covering [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t npoints);

/// Propagates sigma0 (taken at grid.front()) across a strictly increasing grid.
///
/// Exact multiplies by exp(L dt) between grid points. Adaptive runs an
/// embedded Dormand-Prince 5(4) pair with error control tight enough that the
/// two methods agree to 10 * tol at every grid point.
/// Throws IntegrationFailure naming the time at which the step size collapsed.
Trajectory evolve(const Liouvillian& L, const DensityVector& sigma0, std::span<const double> grid,
                  Method method = Method::Exact, double tol = 1e-10);

/// Unique stationary state, L x = 0 with unit trace.
///
/// Throws NoUniqueSteadyState when the numerical null space of L (singular
/// values below 1e-9 * ||L||_2) is not one-dimensional.
DensityVector steady_state(const Liouvillian& L);

struct FitWindow {
  double begin;
  double end;
};

// [0.1, 1.0] / r, r = minus the diagonal entry of the coherence's Re row.
// Throws FitError when that rate is not positive.
FitWindow default_fit_window(const Liouvillian& L, const CoherencePair& pair);

// Positive decay rate from a least-squares fit of log|s(t)| over the window.
double decoherence_rate(const Trajectory& traj, const CoherencePair& pair, FitWindow window);

}  // namespace qdm
