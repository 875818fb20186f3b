// Policy schedules and iterated best-response search over (s, mu) grids.
#pragma once

#include "ricegroup/negotiation.hpp"
#include "ricegroup/world.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace ricegroup {

/// A constant action, or one action per step.
struct Policy {
  std::vector<Action> schedule;
  bool holdConstant = true;

  static Policy constant(Action a) { return {{a}, true}; }
  static Policy per_step(std::vector<Action> steps) { return {std::move(steps), false}; }

  Action at(std::size_t t) const { return holdConstant ? schedule.front() : schedule.at(t); }

  bool operator==(const Policy&) const = default;
};

using Profile = std::vector<Policy>;

struct OptimizerConfig {
  int sGrid = 11;
  double sMax = 0.9;
  int muGrid = 11;
  int maxRounds = 50;
  double tol = 1e-6;
  /// Optimize one action per step, coordinate-wise, instead of one constant action.
  bool perStep = false;

  bool operator==(const OptimizerConfig&) const = default;
};

/// lo + (hi-lo)*i/(n-1); a single point gives {lo}.
std::vector<double> linspace(double lo, double hi, int n);

/// Everything needed to roll a profile forward.
struct WorldConfig {
  WorldParams params;
  MitigationFloorTable baseFloors;
  Grouping grouping;
  std::size_t horizon = 100;
};

/// Per-step detail captured by simulate().
struct StepTrace {
  WorldState state;                 // at the start of the step
  std::vector<double> floors;       // effective floors after negotiation
  std::vector<RegionStep> regions;
  double globalEmissions = 0.0;
};

struct Trajectory {
  std::vector<StepTrace> steps;
  WorldState final;
  Eigen::VectorXd returns;          // per-region discounted return
  std::size_t infeasibleCount = 0;
};

/// Rolls the profile over the horizon, negotiating floors every step.
Trajectory simulate(const Profile& profile, const WorldConfig& cfg);

/// Per-region discounted return; no per-step detail kept.
Eigen::VectorXd evaluate_profile(const Profile& profile, const WorldConfig& cfg);

struct BestResponse {
  Policy policy;
  double value = 0.0;
};

/// Grid candidates for a region: mu ascending (only points at or above the
/// base floor), then s ascending.
std::vector<Action> candidate_actions(const OptimizerConfig& opt, double floor);

/// Best (s, mu) for `regionIndex` with the others held fixed. Ties go to the
/// lower mu, then the lower s.
BestResponse best_response(std::size_t regionIndex, const Profile& profile, const WorldConfig& cfg,
                           const OptimizerConfig& opt);

/// Lowest feasible grid action for every region.
Profile initial_profile(const WorldConfig& cfg, const OptimizerConfig& opt);

struct SweepEvent {
  int round = 0;
  std::size_t region = 0;
  const Profile& before;
  const BestResponse& response;
  double currentValue = 0.0;
  bool adopted = false;
};

struct EquilibriumResult {
  Profile profile;
  Eigen::VectorXd returns;
  int rounds = 0;
  bool converged = false;
};

/// Round-robin best responses in ascending region order. A response is adopted
/// when it beats the current return by more than tol; a sweep with no adoption
/// ends the search.
EquilibriumResult iterated_best_response(const WorldConfig& cfg, const OptimizerConfig& opt,
                                         const std::function<void(const SweepEvent&)>& observer = {});

}  // namespace ricegroup
