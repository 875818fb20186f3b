// Region grouping, floor proposals and per-region mitigation floors.
#pragma once

#include "ricegroup/econ.hpp"
#include "ricegroup/errors.hpp"
#include "ricegroup/world.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ricegroup {

enum class FloorRegime { uniform, dynamic, custom };

std::string to_string(FloorRegime regime);
/// Throws ConfigError on an unknown name.
FloorRegime parse_floor_regime(const std::string& name);

inline constexpr std::size_t kTableRegions = 27;
inline constexpr double kUniformFloor = 0.9;

/// Published dynamic-grouping floors for the 27-region instance, region 1 first.
std::span<const double, kTableRegions> dynamic_grouping_floors();

struct MitigationFloorTable {
  std::vector<double> floors;  // index = region id - 1
  FloorRegime regime = FloorRegime::custom;

  double floor(int regionId) const { return floors.at(static_cast<std::size_t>(regionId - 1)); }
  std::size_t size() const { return floors.size(); }
  double sum() const;
  double mean() const;

  bool operator==(const MitigationFloorTable&) const = default;
};

/// Uniform: 27 x 0.9. Dynamic: the published 27 values. Custom: read from
/// `source`, a JSON file holding {"floors": [...]} or a bare array.
MitigationFloorTable load_floor_table(FloorRegime regime,
                                      const std::optional<std::filesystem::path>& source = {});

/// Validates every entry is in [0,1]; the error names the offending region.
MitigationFloorTable make_custom_floor_table(std::vector<double> floors);

struct AdjacencyGraph {
  std::vector<int> regions;
  std::vector<std::pair<int, int>> edges;  // each undirected pair stored once

  /// Throws std::invalid_argument on unknown ids, self loops or duplicates.
  void validate() const;
};

struct Grouping {
  std::vector<std::vector<int>> groups;  // sorted members; groups ordered by lowest member
  std::map<int, std::size_t> groupOf;

  const std::vector<int>& group_of(int regionId) const { return groups.at(groupOf.at(regionId)); }
};

/// Connected components of the subgraph keeping only edges whose endpoints
/// share a continent tag.
Grouping form_groups(const AdjacencyGraph& graph, const std::map<int, std::string>& continents);

struct Proposal {
  int proposer = 0;
  int target = 0;
  double requestedFloor = 0.0;

  bool operator==(const Proposal&) const = default;
};

struct Decision {
  int target = 0;
  Proposal proposal;
  bool accepted = false;

  bool operator==(const Decision&) const = default;
};

/// Reciprocity: ask every other member of the proposer's group to commit to
/// the proposer's own intended mitigation rate.
std::vector<Proposal> propose_floors(int proposer, const Grouping& grouping, Action intended);

/// What a region needs to judge a proposal: the world at the current step and
/// every region's intended (base-floor clamped) action.
struct NegotiationContext {
  const WorldParams& params;
  const WorldState& state;
  std::span<const Action> intended;
  const MitigationFloorTable& base;
  /// Emissions under `intended`, one per region; recomputed when empty.
  std::span<const double> intendedEmissions = {};
};

/// Two-step discounted reward of `target` if it plays `mu` now and next step,
/// everyone else holding their intended actions.
double lookahead_value(const NegotiationContext& ctx, int target, double mu);

/// Accept when the proposal is non-binding (requested <= current floor) or the
/// lookahead with mu raised to the request is no worse than without.
std::vector<Decision> evaluate_proposals(int target, std::span<const Proposal> incoming,
                                         const NegotiationContext& ctx);

/// floor(i) = max(base(i), accepted requests addressed to i).
MitigationFloorTable resolve_floors(std::span<const Decision> decisions,
                                    const MitigationFloorTable& base);

inline Action clamp_action(Action a, double floor) {
  if (a.mu < floor) a.mu = floor;
  return a;
}

struct NegotiationRound {
  std::vector<Proposal> proposals;
  std::vector<Decision> decisions;
  MitigationFloorTable effective;
};

/// One proposals -> decisions -> resolution round for the current step.
/// `actions` are the regions' unclamped intended actions.
NegotiationRound negotiate(const WorldParams& params, const WorldState& state,
                           std::span<const Action> actions, const MitigationFloorTable& base,
                           const Grouping& grouping);

}  // namespace ricegroup
