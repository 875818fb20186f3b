#include "ricegroup/policy.hpp"

#include <stdexcept>

namespace ricegroup {
namespace {

constexpr double kFloorSlack = 1e-12;

template <bool Record>
Trajectory roll_out(const Profile& profile, const WorldConfig& cfg) {
  const std::size_t n = cfg.params.size();
  if (profile.size() != n) throw std::invalid_argument("profile needs one policy per region");
  if (cfg.baseFloors.size() != n)
    throw std::invalid_argument("floor table size does not match region count");

  Trajectory out;
  out.returns = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  if constexpr (Record) out.steps.reserve(cfg.horizon);

  WorldState state = initial_world(cfg.params);
  std::vector<Action> actions(n);
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) actions[i] = profile[i].at(t);
    NegotiationRound round = negotiate(cfg.params, state, actions, cfg.baseFloors, cfg.grouping);
    StepOutcome step = world_step(cfg.params, state, actions, round.effective.floors);

    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out.returns(k) += weight(k) * step.regions[i].reward;
      weight(k) *= cfg.params.regions[i].beta;
      if (step.regions[i].infeasible) ++out.infeasibleCount;
    }
    if constexpr (Record) {
      out.steps.push_back({std::move(state), std::move(round.effective.floors),
                           std::move(step.regions), step.globalEmissions});
    }
    state = std::move(step.next);
  }
  out.final = std::move(state);
  return out;
}

bool better(double candidate, double incumbent) { return candidate > incumbent; }

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

Trajectory simulate(const Profile& profile, const WorldConfig& cfg) {
  return roll_out<true>(profile, cfg);
}

Eigen::VectorXd evaluate_profile(const Profile& profile, const WorldConfig& cfg) {
  return roll_out<false>(profile, cfg).returns;
}

std::vector<Action> candidate_actions(const OptimizerConfig& opt, double floor) {
  const auto sValues = linspace(0.0, opt.sMax, opt.sGrid);
  const auto muValues = linspace(0.0, 1.0, opt.muGrid);
  std::vector<Action> out;
  for (double mu : muValues) {
    if (mu + kFloorSlack < floor) continue;
    for (double s : sValues) out.push_back({s, mu});
  }
  return out;
}

BestResponse best_response(std::size_t regionIndex, const Profile& profile, const WorldConfig& cfg,
                           const OptimizerConfig& opt) {
  const auto k = static_cast<Eigen::Index>(regionIndex);
  const auto candidates = candidate_actions(opt, cfg.baseFloors.floors.at(regionIndex));
  if (candidates.empty()) throw std::logic_error("no feasible grid point at or above the floor");

  Profile trial = profile;
  if (!opt.perStep) {
    BestResponse best;
    bool have = false;
    for (const Action& a : candidates) {
      trial[regionIndex] = Policy::constant(a);
      const double value = evaluate_profile(trial, cfg)(k);
      if (!have || better(value, best.value)) {
        best = {trial[regionIndex], value};
        have = true;
      }
    }
    return best;
  }

  // Coordinate-wise: one pass over steps, each step searched over the grid
  // with the rest of the schedule held.
  std::vector<Action> schedule(cfg.horizon);
  for (std::size_t t = 0; t < cfg.horizon; ++t) schedule[t] = profile[regionIndex].at(t);
  trial[regionIndex] = Policy::per_step(schedule);
  BestResponse best{trial[regionIndex], evaluate_profile(trial, cfg)(k)};
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    Action bestAction = schedule[t];
    double bestValue = 0.0;
    bool have = false;
    for (const Action& a : candidates) {
      schedule[t] = a;
      trial[regionIndex] = Policy::per_step(schedule);
      const double value = evaluate_profile(trial, cfg)(k);
      if (!have || better(value, bestValue)) {
        bestAction = a;
        bestValue = value;
        have = true;
      }
    }
    schedule[t] = bestAction;
    best = {Policy::per_step(schedule), bestValue};
  }
  return best;
}

Profile initial_profile(const WorldConfig& cfg, const OptimizerConfig& opt) {
  Profile p;
  p.reserve(cfg.params.size());
  for (std::size_t i = 0; i < cfg.params.size(); ++i) {
    const Action first = candidate_actions(opt, cfg.baseFloors.floors.at(i)).front();
    if (opt.perStep)
      p.push_back(Policy::per_step(std::vector<Action>(cfg.horizon, first)));
    else
      p.push_back(Policy::constant(first));
  }
  return p;
}

EquilibriumResult iterated_best_response(const WorldConfig& cfg, const OptimizerConfig& opt,
                                         const std::function<void(const SweepEvent&)>& observer) {
  EquilibriumResult result;
  result.profile = initial_profile(cfg, opt);
  result.returns = evaluate_profile(result.profile, cfg);

  for (int round = 1; round <= opt.maxRounds; ++round) {
    result.rounds = round;
    bool changed = false;
    for (std::size_t i = 0; i < cfg.params.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      const double current = result.returns(k);
      const BestResponse br = best_response(i, result.profile, cfg, opt);
      const bool adopt = br.value - current > opt.tol;
      if (observer) observer({round, i, result.profile, br, current, adopt});
      if (adopt) {
        result.profile[i] = br.policy;
        result.returns = evaluate_profile(result.profile, cfg);
        changed = true;
      }
    }
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace ricegroup
