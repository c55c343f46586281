#include <algorithm>
#include <string>

#include "doctest.h"
#include "qdm/config.hpp"
#include "qdm/errors.hpp"

using namespace qdm;

namespace {

std::string message_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal double dot config") {
  const RunConfig cfg = parse_config(R"(
[model]
type = double_dot
[params]
Gamma_L = 1
Gamma_R = 1
Omega = 1
epsilon = 0
[run]
mode = steady
)");
  CHECK(cfg.model == ModelKind::DoubleDot);
  CHECK(cfg.mode == RunMode::Steady);
  CHECK(cfg.params.at("Omega") == 1.0);
  CHECK(cfg.params.at("epsilon") == 0.0);
}

TEST_CASE("missing Omega is named") {
  const std::string msg = message_of("[model]\ntype = double_dot\n[params]\nGamma_L = 1\nGamma_R = 1\n");
  CHECK(msg.find("Omega") != std::string::npos);
  CHECK_THROWS_AS(parse_config("[model]\ntype = double_dot\n[params]\nGamma_L = 1\nGamma_R = 1\n"),
                  ConfigError);
}

TEST_CASE("detector-occupied widths default to their partners") {
  const RunConfig cfg = parse_config(R"(
[model]
type = single_dot_detector
[params]
Gamma_L = 1
Gamma_R = 2
gamma_L = 3   # entry
gamma_R = 4   ; exit
gamma_Rp = 9
)");
  CHECK(cfg.params.at("gamma_Lp") == 3.0);
  CHECK(cfg.params.at("Gamma_Lp") == 1.0);
  CHECK(cfg.params.at("Gamma_Rp") == 2.0);
  CHECK(cfg.params.at("gamma_Rp") == 9.0);
  CHECK(std::find(cfg.copied.begin(), cfg.copied.end(), "gamma_Lp") != cfg.copied.end());
  CHECK(std::find(cfg.copied.begin(), cfg.copied.end(), "gamma_Rp") == cfg.copied.end());
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse_config("[model]\ntype = double_dot\n[params]\nGamma_L 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  try {
    parse_config("[model]\ntype = double_dot\ntype = reduced\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_config("[model]\ntype = double_dot\n[params]\nGamma_L = 1\nGamma_R = one\nOmega = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(parse_config("[modle]\ntype = double_dot\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("type = double_dot\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model\n"), ConfigError);
}

TEST_CASE("unknown keys are rejected by name") {
  const std::string base = "[model]\ntype = double_dot\n[params]\nGamma_L = 1\nGamma_R = 1\nOmega = 1\n";
  CHECK(message_of(base + "gamma_L = 1\n").find("gamma_L") != std::string::npos);
  CHECK(message_of(base + "[run]\nspeed = 3\n").find("speed") != std::string::npos);
  CHECK(message_of("[model]\ntype = triple_dot\n").find("triple_dot") != std::string::npos);
  CHECK_THROWS_AS(parse_config(base + "[model]\nregime = never_blocked\n"), ConfigError);
}

TEST_CASE("run sections") {
  const std::string base =
      "[model]\ntype = double_dot_detector\nregime = always_blocked\n"
      "[params]\nGamma_L = 1\nGamma_R = 1\nOmega = 1\ngamma_L = 2\ngamma_R = 20\n";
  SUBCASE("evolve") {
    const RunConfig cfg = parse_config(base + "[run]\nmode = evolve\ntmax = 5\nmethod = adaptive\ntol = 1e-9\ninitial = b\n");
    CHECK(cfg.regime == DetectorRegime::AlwaysBlocked);
    CHECK(cfg.evolve.tmax == 5.0);
    CHECK(cfg.evolve.npoints == 201);
    CHECK(cfg.evolve.method == Method::Adaptive);
    CHECK(cfg.evolve.tol == 1e-9);
    CHECK(cfg.evolve.initial == "b");
    CHECK(cfg.params.at("Omega_p") == 1.0);
    CHECK(cfg.params.at("U1") == 0.0);
    CHECK_THROWS_AS(parse_config(base + "[run]\nmode = evolve\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "[run]\nmode = evolve\ntmax = 1\ninitial = z\n"), ConfigError);
  }
  SUBCASE("sweep") {
    const RunConfig cfg = parse_config(
        base + "[run]\nmode = sweep\nparameter = gamma_L\nstart = 1\nstop = 100\ncount = 3\nscale = log\n");
    const auto v = cfg.sweep.values();
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == doctest::Approx(10.0));
    CHECK(v[2] == 100.0);
    CHECK_THROWS_AS(parse_config(base + "[run]\nmode = sweep\nparameter = speed\nstart = 1\nstop = 2\ncount = 3\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(base + "[run]\nmode = sweep\nparameter = Omega\nstart = 0\nstop = 2\ncount = 3\nscale = log\n"),
                    ConfigError);
  }
}

TEST_CASE("overrides") {
  RawConfig raw = parse_sections("[model]\ntype = double_dot\n[params]\nGamma_L = 1\nGamma_R = 1\n");
  apply_override(raw, "Omega=2");
  apply_override(raw, "run.mode=steady");
  apply_override(raw, "params.Gamma_L = 3");
  const RunConfig cfg = validate_config(raw);
  CHECK(cfg.params.at("Omega") == 2.0);
  CHECK(cfg.params.at("Gamma_L") == 3.0);
  CHECK_THROWS_AS(apply_override(raw, "Omega"), ConfigError);
  CHECK_THROWS_AS(apply_override(raw, "stuff.x=1"), ConfigError);
}

TEST_CASE("model kinds and parameter lists") {
  for (auto k : {ModelKind::SingleDotDetector, ModelKind::DoubleDot, ModelKind::DoubleDotDetector,
                 ModelKind::Reduced}) {
    CHECK(parse_model_kind(to_string(k)) == k);
    CHECK_FALSE(model_parameters(k).empty());
  }
  CHECK_FALSE(parse_model_kind("double").has_value());
  const auto& reduced = model_parameters(ModelKind::Reduced);
  CHECK(std::find(reduced.begin(), reduced.end(), "gamma_L") != reduced.end());
  CHECK(default_copies(ModelKind::DoubleDot).empty());
}
