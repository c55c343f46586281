// qdm: stationary currents, time evolution, sweeps and named studies for
// quantum-dot transport measured by a detector dot.
//
//   qdm steady   --config run.ini [--set key=value]... [--out file.csv]
//   qdm evolve   --config run.ini [--method exact|adaptive] [--tol 1e-10]
//   qdm sweep    --config run.ini
//   qdm scenario fig3|zeno|noninvasive|reduction [--set key=value]...
//
// CSV goes to --out or stdout. Failures print one JSON object on stderr and
// exit with status 1.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdm/config.hpp"
#include "qdm/csv.hpp"
#include "qdm/errors.hpp"
#include "qdm/runner.hpp"
#include "qdm/scenarios.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qdm::IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const qdm::Table& table, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << qdm::to_csv(table);
  } else {
    qdm::emit_csv(table, out);
  }
}

int fail(std::string_view kind, const std::string& message) {
  nlohmann::json line = {{"error", kind}, {"message", message}};
  std::cerr << line.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-induced decoherence in quantum-dot transport"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  std::string method;
  double tol = 0.0;
  std::string scenario;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    sub->add_option("--set", overrides, "Override, e.g. gamma_L=5 or run.tmax=20")
        ->allow_extra_args(false);
  };

  auto* evolve = app.add_subcommand("evolve", "Time evolution from the empty state");
  auto* steady = app.add_subcommand("steady", "Stationary state and dc currents");
  auto* sweep = app.add_subcommand("sweep", "Stationary currents over a parameter range");
  auto* scen = app.add_subcommand("scenario", "Named study: fig3, zeno, noninvasive, reduction");
  for (auto* sub : {evolve, steady, sweep}) {
    sub->add_option("--config", config_path, "Config file ([model], [params], [run])")
        ->required();
    add_common(sub);
  }
  evolve->add_option("--method", method, "exact or adaptive")
      ->check(CLI::IsMember({"exact", "adaptive"}));
  evolve->add_option("--tol", tol, "Adaptive integrator tolerance")->check(CLI::PositiveNumber);
  scen->add_option("name", scenario, "Scenario name")->required();
  scen->add_option("--config", config_path, "Optional config whose [params] become overrides");
  add_common(scen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    qdm::RawConfig raw;
    if (!config_path.empty()) raw = qdm::parse_sections(read_file(config_path));
    for (const auto& o : overrides) qdm::apply_override(raw, o);

    if (scen->parsed()) {
      raw.sections["run"]["mode"] = {"scenario", 0};
      raw.sections["run"]["scenario"] = {scenario, 0};
      const qdm::RunConfig cfg = qdm::validate_config(raw);
      const qdm::ScenarioResult result = qdm::run_scenario(cfg.scenario, cfg.params);
      write_output(result.table, out_path);
      for (const auto& line : result.summary) std::clog << line << '\n';
      return 0;
    }

    const char* mode = evolve->parsed() ? "evolve" : steady->parsed() ? "steady" : "sweep";
    raw.sections["run"]["mode"] = {mode, 0};
    if (!method.empty()) raw.sections["run"]["method"] = {method, 0};
    if (tol > 0.0) raw.sections["run"]["tol"] = {qdm::format_double(tol), 0};
    const qdm::RunConfig cfg = qdm::validate_config(raw);

    qdm::Table table;
    switch (cfg.mode) {
      case qdm::RunMode::Evolve: table = qdm::run_evolve(cfg); break;
      case qdm::RunMode::Steady: table = qdm::run_steady(cfg); break;
      default: table = qdm::run_sweep(cfg); break;
    }
    write_output(table, out_path);
    return 0;
  } catch (const qdm::Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
}
