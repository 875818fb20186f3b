// Scenario configuration: JSON schema, validation and emission.
#pragma once

#include "ricegroup/errors.hpp"
#include "ricegroup/negotiation.hpp"
#include "ricegroup/policy.hpp"
#include "ricegroup/world.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ricegroup {

struct ScenarioConfig {
  std::vector<RegionParams> regions;
  ClimateParams<double> climate;
  ClimateState<double> initialClimate;
  std::vector<std::pair<int, int>> adjacency;
  FloorRegime floorRegime = FloorRegime::uniform;
  std::optional<std::string> floorSource;  // as written; resolved against baseDir
  RewardParams reward;
  OptimizerConfig optimizer;
  std::size_t horizon = 100;
  std::uint64_t seed = 0;  // reserved, the simulator is deterministic

  std::filesystem::path baseDir;  // directory of the config file, not serialized

  bool operator==(const ScenarioConfig&) const = default;
};

/// Annual three-box carbon cycle and two-layer temperature defaults.
ClimateParams<double> default_climate();
ClimateState<double> default_initial_climate();

/// Parses the document. Throws ConfigSchemaError listing every malformed field.
ScenarioConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& baseDir = {});

nlohmann::json config_to_json(const ScenarioConfig& cfg);

/// Every violated invariant, one entry per problem, each naming its field path.
std::vector<std::string> check_invariants(const ScenarioConfig& cfg);

/// Reads, parses and validates. Throws ConfigReadError, ConfigSchemaError or
/// ConfigInvariantError.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Base floors for the scenario. The uniform regime has one 0.9 entry per
/// region; dynamic needs exactly 27 regions; custom loads floorSource.
MitigationFloorTable scenario_floor_table(const ScenarioConfig& cfg,
                                          std::optional<FloorRegime> regime = {});

WorldConfig build_world(const ScenarioConfig& cfg, std::optional<FloorRegime> regime = {});

}  // namespace ricegroup
