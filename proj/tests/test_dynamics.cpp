#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/errors.hpp"
#include "qdm/models.hpp"

using namespace qdm;

namespace {

double min_positive_width(std::initializer_list<double> widths) {
  double lo = INFINITY;
  for (double w : widths) {
    if (w > 0.0) lo = std::min(lo, w);
  }
  return lo;
}

void check_physical(const Trajectory& traj) {
  for (const auto& s : traj.states) {
    const std::string why = s.physical_violation();
    CHECK_MESSAGE(why.empty(), why);
  }
}

DensityVector half_coherent(const StateSpace& space, const CoherencePair& pair) {
  DensityVector x(space);
  x.set_population(pair.first, 0.5).set_population(pair.second, 0.5).set_coherence(pair, {0.5, 0.0});
  return x;
}

}  // namespace

TEST_CASE("density vector accessors") {
  DensityVector x = DensityVector::all_empty(StateSpace::double_dot());
  CHECK(x.population("a") == 1.0);
  CHECK(x.trace() == 1.0);
  x.set_coherence({"b", "c"}, {0.1, 0.2});
  CHECK(x.coherence({"b", "c"}) == std::complex<double>(0.1, 0.2));
  CHECK(x.coherence({"c", "b"}) == std::complex<double>(0.1, -0.2));
  CHECK_THROWS_AS(x.population("z"), SpecError);
  CHECK_THROWS_AS(x.coherence({"a", "b"}), SpecError);
  CHECK_FALSE(x.physical_violation().empty());  // |s|^2 > p_b p_c = 0
  CHECK_THROWS_AS(DensityVector(StateSpace::reduced(), Eigen::VectorXd::Zero(3)), SpecError);
}

TEST_CASE("zero generator leaves the state frozen") {
  const Liouvillian L(StateSpace::double_dot(), Eigen::MatrixXd::Zero(5, 5));
  const DensityVector x0 = half_coherent(StateSpace::double_dot(), {"b", "c"});
  const auto grid = uniform_grid(0.0, 5.0, 11);
  for (Method m : {Method::Exact, Method::Adaptive}) {
    const Trajectory t = evolve(L, x0, grid, m);
    REQUIRE(t.size() == grid.size());
    for (const auto& s : t.states) CHECK(s.values() == x0.values());
  }
  CHECK_THROWS_AS(steady_state(L), NoUniqueSteadyState);
  const auto rate_window = FitWindow{0.5, 4.0};
  CHECK_THROWS_AS(decoherence_rate(evolve(L, x0, grid), {"b", "c"}, rate_window), FitError);
  CHECK_THROWS_AS(default_fit_window(L, {"b", "c"}), FitError);
}

TEST_CASE("closed two-level system performs Rabi oscillations") {
  const DoubleDotParams p{0.0, 0.0, 1.0, 0.0};
  const Liouvillian L = build_double_dot(p);
  const auto grid = uniform_grid(0.0, 10.0, 201);
  for (Method m : {Method::Exact, Method::Adaptive}) {
    const Trajectory t = evolve(L, DensityVector::pure(L.space(), "b"), grid, m, 1e-11);
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double c = std::cos(p.Omega * t.times[k]);
      CHECK(std::abs(t.states[k].population("b") - c * c) < 1e-9);
      CHECK(std::abs(t.states[k].trace() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("grid and argument validation") {
  const Liouvillian L = build_double_dot({1, 1, 1, 0});
  const DensityVector x0 = DensityVector::all_empty(L.space());
  const std::vector<double> bad = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(evolve(L, x0, bad), ValidationError);
  CHECK_THROWS_AS(evolve(L, x0, std::vector<double>{}), ValidationError);
  CHECK_THROWS_AS(evolve(L, x0, uniform_grid(0, 1, 3), Method::Adaptive, 0.0), ValidationError);
  CHECK_THROWS_AS(evolve(L, DensityVector::all_empty(StateSpace::reduced()), uniform_grid(0, 1, 3)),
                  SpecError);
}

TEST_CASE("a growing generator is reported as an integration failure") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  m(0, 0) = 2000.0;
  const Liouvillian L(StateSpace::double_dot(), m);
  const auto grid = uniform_grid(0.0, 10.0, 3);
  try {
    evolve(L, DensityVector::all_empty(L.space()), grid, Method::Adaptive, 1e-10);
    FAIL("expected IntegrationFailure");
  } catch (const IntegrationFailure& e) {
    CHECK(e.time() >= 0.0);
    CHECK(e.time() <= 10.0);
    CHECK(std::string(e.kind()) == "integration");
  }
}

TEST_CASE("steady state examples") {
  const Liouvillian L2 = build_double_dot({1, 1, 1, 0});
  const DensityVector x = steady_state(L2);
  CHECK(x.population("c") == doctest::Approx(1.0 / 3.25).epsilon(1e-12));
  CHECK(x.trace() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((L2.matrix() * x.values()).cwiseAbs().maxCoeff() <= 1e-12);

  const auto q = SingleDotDetectorParams::unprimed(1.0, 1.0, 0.0, 0.0);
  auto q2 = q;
  q2.gamma_R = q2.gamma_Rp = 1.0;  // a', b' drain back, making the state unique
  CHECK(steady_state(build_single_dot_detector(q2)).population("b") ==
        doctest::Approx(0.5).epsilon(1e-12));
  try {
    steady_state(build_single_dot_detector(q));
    FAIL("expected NoUniqueSteadyState");
  } catch (const NoUniqueSteadyState& e) {
    CHECK(e.null_space_dimension() == 2);
    CHECK(std::string(e.what()).find("rho_b'b'") != std::string::npos);
  }
}

TEST_CASE("decoherence rate examples") {
  const DoubleDotParams p{1.0, 1.0, 0.01, 0.0};
  SUBCASE("bare double dot decays at Gamma_R/2") {
    const Liouvillian L = build_double_dot(p);
    const FitWindow w = default_fit_window(L, {"b", "c"});
    CHECK(w.begin == doctest::Approx(0.2));
    CHECK(w.end == doctest::Approx(2.0));
    const auto t = evolve(L, half_coherent(L.space(), {"b", "c"}), uniform_grid(0.0, 2.0, 201));
    CHECK(decoherence_rate(t, {"b", "c"}, w) == doctest::Approx(0.5).epsilon(0.05));
  }
  SUBCASE("reduced model decays at (Gamma_R + gamma_L)/2") {
    const Liouvillian L = build_reduced_double_dot(p, 3.0);
    const FitWindow w = default_fit_window(L, {"bbar", "cbar"});
    const auto t = evolve(L, half_coherent(L.space(), {"bbar", "cbar"}), uniform_grid(0.0, 0.5, 201));
    CHECK(decoherence_rate(t, {"bbar", "cbar"}, w) == doctest::Approx(2.0).epsilon(0.05));
  }
  SUBCASE("window outside the trajectory") {
    const Liouvillian L = build_double_dot(p);
    const auto t = evolve(L, half_coherent(L.space(), {"b", "c"}), uniform_grid(0.0, 1.0, 11));
    CHECK_THROWS_AS(decoherence_rate(t, {"b", "c"}, {0.5, 3.0}), FitError);
  }
}

TEST_CASE("dynamics properties on random draws") {
  oracle::Draw d(99);
  std::size_t checked = 0;
  auto run = [&](const Liouvillian& L, double slowest) {
    const DensityVector x0 = DensityVector::all_empty(L.space());
    const auto grid = uniform_grid(0.0, 5.0, 26);
    const Trajectory exact = evolve(L, x0, grid, Method::Exact);
    const Trajectory adapt = evolve(L, x0, grid, Method::Adaptive, 1e-10);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(std::abs(exact.states[k].trace() - 1.0) <= 1e-12);
      CHECK((exact.states[k].values() - adapt.states[k].values()).cwiseAbs().maxCoeff() <= 1e-9);
    }
    check_physical(exact);

    // RK4 oracle at the last grid point.
    const Eigen::VectorXd ref = oracle::rk4(L.matrix(), x0.values(), 5.0, 20000);
    CHECK((exact.states.back().values() - ref).cwiseAbs().maxCoeff() < 1e-9);

    const DensityVector ss = steady_state(L);
    const Eigen::VectorXd eig = oracle::stationary_by_eigen(L.matrix(), static_cast<int>(L.space().n_pop()));
    CHECK((ss.values() - eig).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((L.matrix() * ss.values()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, L.matrix().lpNorm<Eigen::Infinity>()));

    const std::vector<double> far = {0.0, 50.0 / slowest};
    const Trajectory late = evolve(L, x0, far);
    CHECK((late.states.back().values() - ss.values()).cwiseAbs().maxCoeff() <= 1e-8);
    ++checked;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto p1 = gen::single_dot(d);
    run(build_single_dot_detector(p1),
        min_positive_width({p1.Gamma_L, p1.Gamma_R, p1.Gamma_Lp, p1.Gamma_Rp, p1.gamma_L, p1.gamma_R,
                            p1.gamma_Lp, p1.gamma_Rp}));
    const auto p2 = gen::double_dot(d);
    run(build_double_dot(p2), min_positive_width({p2.Gamma_L, p2.Gamma_R}));
    const double gl = d(0.1, 3.0);
    run(build_reduced_double_dot(p2, gl), min_positive_width({p2.Gamma_L, p2.Gamma_R, gl}));
    const auto p3 = gen::double_dot_detector(d);
    run(build_double_dot_detector(p3),
        min_positive_width({p3.dots.Gamma_L, p3.dots.Gamma_R, p3.Gamma_Lp, p3.gamma_L, p3.gamma_R,
                            p3.gamma_Lp, p3.gamma_Rp}));
  }
  CHECK(checked == 400);
}
