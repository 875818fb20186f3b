#include "ricegroup/world.hpp"

#include "ricegroup/negotiation.hpp"

#include <stdexcept>

namespace ricegroup {

WorldState initial_world(const WorldParams& params) {
  WorldState w;
  w.regions.reserve(params.regions.size());
  for (const auto& r : params.regions) w.regions.push_back(initial_state(r));
  w.climate = params.initialClimate;
  return w;
}

RegionStep region_step(const RegionParams& p, const RegionState& state, double tAT,
                       Action action, std::size_t t, const RewardParams& reward) {
  RegionStep out;
  out.action = action;
  out.Q = gross_output(state.A, state.K, state.L, p.gamma);
  out.damage = damage_fraction(tAT, p.a1, p.a2);
  out.abatement = abatement_cost_fraction(action.mu, p.theta1, p.theta2);
  out.Qnet = net_output(out.Q, out.damage, out.abatement);
  out.E = emissions(state.sigma, action.mu, out.Q);

  const auto c = consumption(action.s, out.Qnet, p.exports_at(t), reward.epsilonC);
  out.C = c.value;
  out.infeasible = c.infeasible;
  out.U = baseline_utility(out.C, state.L, p.alpha);
  out.reward = reward.omega == 0.0
                   ? out.U
                   : augmented_reward(out.C, state.L, p.alpha, action.s, out.Qnet, reward.omega);

  out.next = exogenous_step(state, p);
  out.next.K = capital_step(state.K, action.s, out.Qnet, p.delta);
  return out;
}

StepOutcome world_step(const WorldParams& params, const WorldState& state,
                       std::span<const Action> actions, std::span<const double> floors,
                       bool clamp) {
  const std::size_t n = params.regions.size();
  if (actions.size() != n || state.regions.size() != n)
    throw std::invalid_argument("world_step needs one action and one state per region");
  if (clamp && floors.size() != n)
    throw std::invalid_argument("world_step needs one floor per region");

  StepOutcome out;
  out.regions.reserve(n);
  out.next.t = state.t + 1;
  out.next.regions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double floor = clamp ? floors[i] : 0.0;
    const Action a = clamp ? clamp_action(actions[i], floor) : actions[i];
    RegionStep r = region_step(params.regions[i], state.regions[i], state.climate.tAT, a,
                               state.t, params.reward);
    r.floor = floor;
    out.globalEmissions += r.E;
    out.next.regions.push_back(r.next);
    out.regions.push_back(std::move(r));
  }
  out.next.climate = climate_step(state.climate, out.globalEmissions, params.climate);
  return out;
}

}  // namespace ricegroup
