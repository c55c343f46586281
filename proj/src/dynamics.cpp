#include "qdm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "qdm/errors.hpp"
#include "qdm/numerics.hpp"

namespace qdm {

DensityVector::DensityVector(const StateSpace& space)
    : space_(&space), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dim_real()))) {}

DensityVector::DensityVector(const StateSpace& space, Eigen::VectorXd values)
    : space_(&space), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(space.dim_real())) {
    throw SpecError("state vector of length " + std::to_string(values_.size()) +
                    " does not match " + std::string(to_string(space.kind())) + " (dimension " +
                    std::to_string(space.dim_real()) + ")");
  }
}

DensityVector DensityVector::pure(const StateSpace& space, std::string_view label) {
  DensityVector v(space);
  v.set_population(label, 1.0);
  return v;
}

DensityVector DensityVector::all_empty(const StateSpace& space) {
  return pure(space, space.labels().front());
}

double DensityVector::population(std::string_view label) const {
  return values_(static_cast<Eigen::Index>(space_->require_population(label)));
}

std::complex<double> DensityVector::coherence(const CoherencePair& pair) const {
  const auto i = static_cast<Eigen::Index>(space_->require_coherence(pair));
  const std::complex<double> s(values_(i), values_(i + 1));
  // The reversed pair is the complex conjugate.
  const auto& stored = space_->coherence_pairs()[(static_cast<std::size_t>(i) - space_->n_pop()) / 2];
  return stored.first == pair.first ? s : std::conj(s);
}

DensityVector& DensityVector::set_population(std::string_view label, double value) {
  values_(static_cast<Eigen::Index>(space_->require_population(label))) = value;
  return *this;
}

DensityVector& DensityVector::set_coherence(const CoherencePair& pair, std::complex<double> value) {
  const auto i = static_cast<Eigen::Index>(space_->require_coherence(pair));
  const auto& stored = space_->coherence_pairs()[(static_cast<std::size_t>(i) - space_->n_pop()) / 2];
  if (stored.first != pair.first) value = std::conj(value);
  values_(i) = value.real();
  values_(i + 1) = value.imag();
  return *this;
}

double DensityVector::trace() const {
  return values_.head(static_cast<Eigen::Index>(space_->n_pop())).sum();
}

std::string DensityVector::physical_violation(double trace_tol, double pop_tol,
                                              double coherence_tol) const {
  std::ostringstream out;
  out.precision(17);
  const double tr = trace();
  if (!(std::abs(tr - 1.0) <= trace_tol)) {
    out << "trace " << tr << " deviates from 1 by more than " << trace_tol;
    return out.str();
  }
  for (std::size_t i = 0; i < space_->n_pop(); ++i) {
    const double p = values_(static_cast<Eigen::Index>(i));
    if (!(p >= -pop_tol)) {
      out << "population " << space_->component_name(i) << " = " << p << " is negative";
      return out.str();
    }
  }
  for (const auto& pair : space_->coherence_pairs()) {
    const double bound = population(pair.first) * population(pair.second);
    const double mag2 = std::norm(coherence(pair));
    if (!(mag2 <= bound + coherence_tol)) {
      out << "|rho_" << pair.first << pair.second << "|^2 = " << mag2
          << " exceeds population product " << bound;
      return out.str();
    }
  }
  return {};
}

std::string_view to_string(Method method) noexcept {
  return method == Method::Exact ? "exact" : "adaptive";
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t npoints) {
  if (npoints < 2 || !(t1 > t0)) {
    throw ValidationError("time grid needs t1 > t0 and at least two points");
  }
  std::vector<double> grid(npoints);
  const double h = (t1 - t0) / static_cast<double>(npoints - 1);
  for (std::size_t k = 0; k < npoints; ++k) grid[k] = t0 + h * static_cast<double>(k);
  grid.back() = t1;
  return grid;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("time grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw ValidationError("time grid contains a non-finite value");
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw ValidationError("time grid must be strictly increasing");
    }
  }
}

void evolve_exact(const Eigen::MatrixXd& L, std::span<const double> grid, Trajectory& traj) {
  Eigen::VectorXd x = traj.states.front().values();
  const StateSpace& space = traj.states.front().space();
  double cached_dt = -1.0;
  Eigen::MatrixXd propagator;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double dt = grid[k] - grid[k - 1];
    if (dt != cached_dt) {
      propagator = (L * dt).exp();
      cached_dt = dt;
    }
    x = propagator * x;
    traj.times.push_back(grid[k]);
    traj.states.emplace_back(space, x);
  }
}

void evolve_adaptive(const Eigen::MatrixXd& L, std::span<const double> grid, double tol,
                     Trajectory& traj) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;

  const auto n = L.rows();
  auto rhs = [&L, n](const State& x, State& dxdt, double /*t*/) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    Eigen::Map<Eigen::VectorXd> dv(dxdt.data(), n);
    dv.noalias() = L * xv;
  };

  // Local error control a decade below the requested agreement.
  const double eps = 0.1 * tol;
  auto stepper = odeint::make_controlled(eps, eps, odeint::runge_kutta_dopri5<State>());

  const Eigen::VectorXd& x0 = traj.states.front().values();
  State x(x0.data(), x0.data() + n);
  const StateSpace& space = traj.states.front().space();

  constexpr std::size_t max_steps = 50'000'000;
  std::size_t steps = 0;
  double t = grid.front();
  double dt = 0.0;
  {
    const double norm = L.lpNorm<Eigen::Infinity>();
    const double span = grid.back() - grid.front();
    dt = norm > 0.0 ? std::min(0.01 / norm, span) : span;
    if (!(dt > 0.0)) dt = 1e-3;
  }

  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double target = grid[k];
    while (t < target) {
      const double min_dt = 1e-14 * std::max(1.0, std::abs(t));
      const double remaining = target - t;
      const bool clamp = dt >= remaining;
      double trial = clamp ? remaining : dt;
      const double t_before = t;
      const auto result = stepper.try_step(rhs, x, t, trial);
      if (result == odeint::success) {
        for (double v : x) {
          if (!std::isfinite(v)) {
            throw IntegrationFailure(
                "state became non-finite at t = " + std::to_string(t_before), t_before);
          }
        }
        if (clamp) t = target;
        // Do not let clamping shrink the step for the next interval.
        dt = clamp ? std::max(dt, trial) : trial;
      } else {
        dt = trial;
        if (dt < min_dt) {
          throw IntegrationFailure("adaptive step size underflow at t = " + std::to_string(t_before),
                                   t_before);
        }
      }
      if (++steps > max_steps) {
        throw IntegrationFailure("adaptive integrator exceeded step budget at t = " +
                                     std::to_string(t),
                                 t);
      }
    }
    traj.times.push_back(target);
    traj.states.emplace_back(space, Eigen::Map<const Eigen::VectorXd>(x.data(), n));
  }
}

}  // namespace

Trajectory evolve(const Liouvillian& L, const DensityVector& sigma0, std::span<const double> grid,
                  Method method, double tol) {
  if (!(sigma0.space() == L.space())) {
    throw SpecError("initial state lives in " + std::string(to_string(sigma0.space().kind())) +
                    " but the generator acts on " + std::string(to_string(L.space().kind())));
  }
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  check_grid(grid);

  Trajectory traj;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());
  traj.times.push_back(grid.front());
  traj.states.push_back(sigma0);

  if (method == Method::Exact) {
    evolve_exact(L.matrix(), grid, traj);
  } else {
    evolve_adaptive(L.matrix(), grid, tol, traj);
  }
  return traj;
}

DensityVector steady_state(const Liouvillian& L) {
  const Eigen::MatrixXd& m = L.matrix();
  const StateSpace& space = L.space();
  const auto n = m.rows();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double norm2 = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = 1e-9 * norm2;
  std::vector<Eigen::Index> null_dirs;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (!(sv(i) > cutoff) || norm2 == 0.0) null_dirs.push_back(i);
  }
  if (null_dirs.size() != 1) {
    std::ostringstream msg;
    msg << "no unique steady state for " << to_string(space.kind()) << ": null-space dimension "
        << null_dirs.size();
    if (!null_dirs.empty()) {
      msg << "; degenerate directions:";
      for (auto col : null_dirs) {
        msg << " [";
        const Eigen::VectorXd v = svd.matrixV().col(col);
        bool first = true;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (std::abs(v(i)) > 1e-6) {
            msg << (first ? "" : ", ") << space.component_name(static_cast<std::size_t>(i));
            first = false;
          }
        }
        msg << "]";
      }
    }
    throw NoUniqueSteadyState(msg.str(), null_dirs.size());
  }

  // Replace the first population row by the trace condition.
  Eigen::MatrixXd a = m;
  a.row(0).setZero();
  a.row(0).head(static_cast<Eigen::Index>(space.n_pop())).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd x = lu.solve(rhs);
  // One round of iterative refinement.
  x += lu.solve(rhs - a * x);

  const double residual = (m * x).lpNorm<Eigen::Infinity>();
  const double scale = std::max(1.0, m.lpNorm<Eigen::Infinity>());
  if (!(residual <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "steady-state residual " << residual << " exceeds tolerance for "
        << to_string(space.kind());
    throw NoUniqueSteadyState(msg.str(), 1);
  }
  return DensityVector(space, std::move(x));
}

FitWindow default_fit_window(const Liouvillian& L, const CoherencePair& pair) {
  const auto re = static_cast<Eigen::Index>(L.space().require_coherence(pair));
  const double rate = -L(re, re);
  if (!(rate > 0.0)) {
    throw FitError("coherence (" + pair.first + ", " + pair.second +
                   ") has no dephasing in this generator; no fit window");
  }
  return {0.1 / rate, 1.0 / rate};
}

double decoherence_rate(const Trajectory& traj, const CoherencePair& pair, FitWindow window) {
  if (traj.size() == 0) throw FitError("empty trajectory");
  if (!(window.end > window.begin)) throw FitError("fit window must have end > begin");
  if (window.begin < traj.times.front() || window.end > traj.times.back()) {
    throw FitError("fit window lies outside the trajectory");
  }
  std::vector<double> t, logmag;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.times[k] < window.begin || traj.times[k] > window.end) continue;
    const double mag = std::abs(traj.states[k].coherence(pair));
    if (!(mag >= 1e-14)) {
      throw FitError("coherence magnitude below 1e-14 at t = " + std::to_string(traj.times[k]) +
                     "; fit unreliable");
    }
    t.push_back(traj.times[k]);
    logmag.push_back(std::log(mag));
  }
  if (t.size() < 2) throw FitError("fewer than two grid points inside the fit window");
  const double rate = -least_squares_line(t, logmag).slope;
  if (!(rate > 0.0)) throw FitError("coherence does not decay inside the fit window");
  return rate;
}

}  // namespace qdm
