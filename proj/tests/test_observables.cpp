#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "qdm/analytics.hpp"
#include "qdm/errors.hpp"
#include "qdm/observables.hpp"

using namespace qdm;

TEST_CASE("current is zero when no collector-adjacent state is occupied") {
  const DoubleDotParams p{1, 1, 1, 0};
  CHECK(current(DensityVector::all_empty(StateSpace::double_dot()), system_current(p)) == 0.0);
  const auto q = SingleDotDetectorParams::unprimed(1, 1, 1, 1);
  CHECK(current(DensityVector::all_empty(StateSpace::single_dot_detector()), system_current(q)) == 0.0);
  CHECK(current(DensityVector::all_empty(StateSpace::single_dot_detector()), detector_current(q)) == 0.0);
}

TEST_CASE("collector specs per model") {
  SingleDotDetectorParams s{1, 2, 3, 4, 5, 6, 7, 8};
  DensityVector x(StateSpace::single_dot_detector(), Eigen::Vector4d(0.1, 0.2, 0.3, 0.4));
  CHECK(current(x, system_current(s)) == doctest::Approx(0.2 * 2 + 0.4 * 4));
  CHECK(current(x, detector_current(s)) == doctest::Approx(0.3 * 6 + 0.4 * 8));
  CHECK(system_current(s).collector == Collector::System);
  CHECK(detector_current(s).collector == Collector::Detector);

  DoubleDotDetectorParams p;
  p.dots = {1.0, 2.5, 1.0, 0.0};
  p.gamma_R = 7.0;
  p.gamma_Rp = 3.0;
  p.gamma_Lp = 0.5;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(10);
  v << 0.1, 0.1, 0.2, 0.1, 0.2, 0.3, 0, 0, 0, 0;
  const DensityVector y(StateSpace::double_dot_detector(), v);
  CHECK(current(y, system_current(p)) == doctest::Approx(2.5 * (0.2 + 0.3)));
  // blocked_by_dot1: b' leaves through gamma'_R, a' and c' through gamma_R.
  CHECK(current(y, detector_current(p)) == doctest::Approx(7.0 * 0.1 + 3.0 * 0.2 + 7.0 * 0.3));
  p.regime = DetectorRegime::AlwaysBlocked;
  CHECK(current(y, detector_current(p)) == doctest::Approx(3.0 * (0.1 + 0.2 + 0.3)));
  p.regime = DetectorRegime::NeverBlocked;
  CHECK(current(y, detector_current(p)) == doctest::Approx(7.0 * 0.6));
}

TEST_CASE("spec validation") {
  CurrentSpec spec{{{"c", 1.0}}, Collector::System};
  CHECK_NOTHROW(spec.validate(StateSpace::double_dot()));
  CHECK_THROWS_AS(spec.validate(StateSpace::reduced()), SpecError);
  CHECK_THROWS_AS(current(DensityVector::all_empty(StateSpace::reduced()), spec), SpecError);
  spec.terms.push_back({"c", 2.0});
  CHECK_THROWS_AS(spec.validate(StateSpace::double_dot()), SpecError);
  CurrentSpec negative{{{"c", -1.0}}, Collector::System};
  CHECK_THROWS(negative.validate(StateSpace::double_dot()));
}

TEST_CASE("current is linear in the state") {
  oracle::Draw d(5);
  const auto p = gen::double_dot_detector(d);
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd u(10), w(10);
    for (int i = 0; i < 10; ++i) {
      u(i) = d(-1, 1);
      w(i) = d(-1, 1);
    }
    const double a = d(-2, 2), b = d(-2, 2);
    const auto& sp = StateSpace::double_dot_detector();
    for (const auto& spec : {system_current(p), detector_current(p)}) {
      const double lhs = current(DensityVector(sp, a * u + b * w), spec);
      const double rhs = a * current(DensityVector(sp, u), spec) + b * current(DensityVector(sp, w), spec);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("accumulated charge") {
  const DoubleDotParams p{1, 1, 1, 0};
  const Liouvillian L = build_double_dot(p);
  const auto grid = uniform_grid(0.0, 200.0, 4001);
  const Trajectory t = evolve(L, DensityVector::all_empty(L.space()), grid);
  const auto q = accumulated_charge(t, system_current(p));
  REQUIRE(q.size() == grid.size());
  CHECK(q.front() == 0.0);
  for (std::size_t k = 1; k < q.size(); ++k) {
    const double trap = 0.5 * (grid[k] - grid[k - 1]) *
                        (current(t.states[k], system_current(p)) + current(t.states[k - 1], system_current(p)));
    CHECK(std::abs((q[k] - q[k - 1]) - trap) <= 8 * 2.3e-16 * std::max(1.0, q[k]));
  }
  const std::size_t n = q.size();
  const double slope = (q[n - 1] - q[n - 101]) / (grid[n - 1] - grid[n - 101]);
  CHECK(slope == doctest::Approx(double_dot_dc(p)).epsilon(1e-6));
}

TEST_CASE("coherence envelope") {
  const DoubleDotParams p{0, 0, 1, 0};
  const Liouvillian L = build_double_dot(p);
  const Trajectory t = evolve(L, DensityVector::pure(L.space(), "b"), uniform_grid(0.0, 3.2, 321));
  const auto env = coherence_envelope(t, {"b", "c"});
  double peak = 0.0;
  for (std::size_t k = 0; k < env.size(); ++k) {
    // |s_bc| = |sin(2 Omega t)| / 2 for the closed two-level system
    CHECK(env[k] == doctest::Approx(0.5 * std::abs(std::sin(2.0 * t.times[k]))).epsilon(1e-9).scale(1.0));
    peak = std::max(peak, env[k]);
  }
  CHECK(peak == doctest::Approx(0.5).epsilon(1e-4));
  CHECK_THROWS_AS(coherence_envelope(t, {"a", "b"}), SpecError);
}
