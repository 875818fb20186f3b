// Coupled multi-region step: economies, shared climate, rewards.
#pragma once

#include "ricegroup/climate.hpp"
#include "ricegroup/econ.hpp"
#include "ricegroup/reward.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ricegroup {

struct WorldParams {
  std::vector<RegionParams> regions;
  ClimateParams<double> climate;
  ClimateState<double> initialClimate;
  /// omega and epsilonC apply to every region; alpha and beta are per region.
  RewardParams reward;

  std::size_t size() const { return regions.size(); }
};

struct WorldState {
  std::size_t t = 0;
  std::vector<RegionState> regions;
  ClimateState<double> climate;

  bool operator==(const WorldState&) const = default;
};

WorldState initial_world(const WorldParams& params);

/// Everything computed for one region during one step.
struct RegionStep {
  Action action;     // after clamping
  double floor = 0.0;
  double Q = 0.0;
  double damage = 0.0;
  double abatement = 0.0;
  double Qnet = 0.0;
  double E = 0.0;
  double C = 0.0;
  double U = 0.0;
  double reward = 0.0;
  bool infeasible = false;
  RegionState next;  // capital and exogenous stocks advanced
};

/// Region-local part of a step, given the atmospheric anomaly the region sees.
RegionStep region_step(const RegionParams& p, const RegionState& state, double tAT,
                       Action action, std::size_t t, const RewardParams& reward);

struct StepOutcome {
  WorldState next;
  std::vector<RegionStep> regions;
  double globalEmissions = 0.0;
};

/// Clamps each action to its floor when `clamp` is set, steps every region,
/// feeds summed emissions to the climate. Throws SimulationDivergence.
StepOutcome world_step(const WorldParams& params, const WorldState& state,
                       std::span<const Action> actions, std::span<const double> floors,
                       bool clamp = true);

}  // namespace ricegroup
