// ricegroup: run, compare and validate negotiation scenarios.
#include "ricegroup/config.hpp"
#include "ricegroup/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitDivergence = 2;

std::vector<ricegroup::FloorRegime> parse_regimes(const std::string& list) {
  std::vector<ricegroup::FloorRegime> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(ricegroup::parse_floor_regime(item));
  }
  if (out.size() < 2) throw ricegroup::ConfigError("compare needs at least two regimes, got '" + list + "'");
  return out;
}

void report_config_error(const ricegroup::ConfigError& e) {
  std::cerr << "config error: " << e.what() << '\n';
  for (const auto& issue : e.issues()) std::cerr << "  " << issue << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-region climate-economy negotiation simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string regimes = "uniform,dynamic";

  auto* run = app.add_subcommand("run", "Solve for best responses and write the trajectory");
  run->add_option("--config", config, "Scenario JSON")->required();
  run->add_option("--out", out, "Output directory")->required();

  auto* compare = app.add_subcommand("compare", "Run several floor regimes on one scenario");
  compare->add_option("--config", config, "Scenario JSON")->required();
  compare->add_option("--regimes", regimes, "Comma separated: uniform,dynamic,custom");
  compare->add_option("--out", out, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--config", config, "Scenario JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const ricegroup::ScenarioConfig cfg = ricegroup::load_config(config);
    if (*validate) {
      std::cout << config << ": valid (" << cfg.regions.size() << " regions, regime "
                << ricegroup::to_string(cfg.floorRegime) << ")\n";
      return 0;
    }
    if (*run) {
      const auto result = ricegroup::run_scenario(cfg);
      ricegroup::write_run(result, out);
      std::cout << "rounds " << result.equilibrium.rounds
                << (result.equilibrium.converged ? " (converged)" : " (not converged)")
                << ", total emissions " << ricegroup::format_number(result.totalEmissions)
                << ", final tAT " << ricegroup::format_number(result.finalTAT) << '\n';
      return 0;
    }
    const auto results = ricegroup::compare_regimes(cfg, parse_regimes(regimes), out);
    for (const auto& r : results) {
      std::cout << ricegroup::to_string(r.regime) << ": floor sum "
                << ricegroup::format_number(r.baseFloors.sum()) << ", emissions "
                << ricegroup::format_number(r.totalEmissions) << '\n';
    }
    return 0;
  } catch (const ricegroup::ConfigError& e) {
    report_config_error(e);
    return kExitConfig;
  } catch (const ricegroup::SimulationDivergence& e) {
    std::cerr << "simulation diverged: " << e.what() << '\n';
    return kExitDivergence;
  }
}
