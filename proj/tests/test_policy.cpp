#include "doctest.h"

#include "fixtures.hpp"
#include "ricegroup/policy.hpp"

#include <cmath>

using namespace ricegroup;
using namespace ricegroup::testing;

namespace {

// Exhaustive argmax over the grid with its own tie rule (first strictly
// better in mu-major, s-minor order), independent of best_response.
BestResponse enumerate(std::size_t region, const Profile& profile, const WorldConfig& cfg,
                       const OptimizerConfig& opt) {
  const auto svals = linspace(0.0, opt.sMax, opt.sGrid);
  const auto muvals = linspace(0.0, 1.0, opt.muGrid);
  BestResponse best;
  bool have = false;
  for (double mu : muvals) {
    if (mu < cfg.baseFloors.floors[region] - 1e-12) continue;
    for (double s : svals) {
      Profile p = profile;
      p[region] = Policy::constant({s, mu});
      const double v = evaluate_profile(p, cfg)(static_cast<Eigen::Index>(region));
      if (!have || v > best.value) {
        best = {p[region], v};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("linspace") {
  CHECK(linspace(0.0, 0.9, 11).size() == 11);
  CHECK(linspace(0.0, 0.9, 11)[1] == doctest::Approx(0.09));
  CHECK(linspace(0.0, 0.9, 11).back() == 0.9);
  CHECK(linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(linspace(0.3, 1.0, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("candidates respect the floor and order mu before s") {
  OptimizerConfig o = grid_5x5();
  const auto c = candidate_actions(o, 0.6);
  REQUIRE(c.size() == 10);
  CHECK(c.front() == Action{0.0, 0.75});
  CHECK(c[1].s > c[0].s);
  CHECK(c.back() == Action{0.9, 1.0});
  CHECK(candidate_actions(o, 0.75).front().mu == 0.75);
  CHECK(candidate_actions(o, 1.0).size() == 5);
}

TEST_CASE("empty horizon yields zero returns") {
  WorldConfig cfg = tiny_two_region();
  cfg.horizon = 0;
  const Profile p{Policy::constant({0.3, 0.5}), Policy::constant({0.1, 0.9})};
  const auto r = evaluate_profile(p, cfg);
  CHECK(r.size() == 2);
  CHECK(r(0) == 0.0);
  CHECK(r(1) == 0.0);
  CHECK(simulate(p, cfg).steps.empty());
}

TEST_CASE("symmetric regions with identical policies earn equal returns") {
  const WorldConfig cfg =
      make_world({plain_region(1, "x"), plain_region(2, "x")}, {0.3, 0.3}, 12, 0.5, {{1, 2}});
  const Profile p{Policy::constant({0.2, 0.4}), Policy::constant({0.2, 0.4})};
  const auto r = evaluate_profile(p, cfg);
  CHECK(r(0) == r(1));
}

TEST_CASE("two-step single-region return matches hand composition") {
  WorldConfig cfg = canonical_one_region(0.5);
  cfg.horizon = 2;
  const Action a{0.27, 0.4};
  const RegionParams& r = cfg.params.regions[0];
  const auto& climate = cfg.params.initialClimate;

  // Spreadsheet-style: raw formulas only.
  auto U = [&](double C, double L) {
    return L / (1 - r.alpha) * (std::pow(C / L, 1 - r.alpha) - 1);
  };
  double K = r.K0, L = r.L0, A = r.A0, sigma = r.sigma0;
  double tAT = climate.tAT, tLO = climate.tLO;
  Eigen::Vector3d m = climate.carbon;
  double total = 0.0, weight = 1.0;
  for (int t = 0; t < 2; ++t) {
    const double Q = A * std::pow(K, r.gamma) * std::pow(L, 1 - r.gamma);
    const double Qnet = Q * (1 - (r.a1 * tAT + r.a2 * tAT * tAT)) * (1 - r.theta1 * std::pow(a.mu, r.theta2));
    const double C = (1 - a.s) * Qnet;
    const double reward = 0.5 * U(C, L) + 0.5 * U(C + a.s * Qnet, L);
    total += weight * reward;
    weight *= r.beta;
    const double E = sigma * (1 - a.mu) * Q;
    m = cfg.params.climate.transfer * m;
    m(0) += E;
    const auto& tp = cfg.params.climate.temp;
    const double F = 3.8 * std::log(m(0) / 588.0) / std::log(2.0);
    const double nextT = tAT + tp.c1 * (F - 3.8 / tp.sensitivity * tAT - tp.c3 * (tAT - tLO));
    tLO = tLO + tp.c4 * (tAT - tLO);
    tAT = nextT;
    K = (1 - r.delta) * K + a.s * Qnet;
    L *= 1 + r.gL;
    A *= 1 + r.gA;
    sigma *= 1 - r.gSigma;
  }
  const auto got = evaluate_profile({Policy::constant(a)}, cfg);
  CHECK(got(0) == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("simulate records every step and clamps to effective floors") {
  const WorldConfig cfg = tiny_two_region();
  const Profile p{Policy::constant({0.3, 0.0}), Policy::constant({0.1, 0.25})};
  const Trajectory tr = simulate(p, cfg);
  REQUIRE(tr.steps.size() == 3);
  for (std::size_t t = 0; t < tr.steps.size(); ++t) {
    CHECK(tr.steps[t].state.t == t);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(tr.steps[t].floors[i] >= cfg.baseFloors.floors[i]);
      CHECK(tr.steps[t].regions[i].action.mu >= tr.steps[t].floors[i]);
    }
  }
  CHECK(tr.final.t == 3);
  CHECK(tr.returns == evaluate_profile(p, cfg));
}

TEST_CASE("per-step schedules are honoured") {
  WorldConfig cfg = canonical_one_region(0.0);
  cfg.horizon = 3;
  const Profile p{Policy::per_step({{0.1, 0.0}, {0.5, 0.2}, {0.0, 1.0}})};
  const Trajectory tr = simulate(p, cfg);
  CHECK(tr.steps[1].regions[0].action == Action{0.5, 0.2});
  CHECK(tr.steps[2].regions[0].E == 0.0);
}

TEST_CASE("best response at omega zero saves nothing") {
  const WorldConfig cfg = canonical_one_region(0.0);
  const OptimizerConfig opt;
  const Profile start = initial_profile(cfg, opt);
  const BestResponse br = best_response(0, start, cfg, opt);
  CHECK(br.policy.schedule[0].s == 0.0);
  const BestResponse oracle = enumerate(0, start, cfg, opt);
  CHECK(br.policy == oracle.policy);
  CHECK(br.value == oracle.value);
}

TEST_CASE("abatement that never pays sits on the floor") {
  // No damages anywhere: any mitigation is pure cost.
  WorldConfig cfg = canonical_one_region(0.0);
  cfg.baseFloors.floors = {0.35};
  const OptimizerConfig opt;
  const BestResponse br = best_response(0, initial_profile(cfg, opt), cfg, opt);
  CHECK(br.policy.schedule[0].mu == doctest::Approx(0.4));
  CHECK(br.policy == enumerate(0, initial_profile(cfg, opt), cfg, opt).policy);

  cfg.baseFloors.floors = {0.0};
  CHECK(best_response(0, initial_profile(cfg, opt), cfg, opt).policy.schedule[0].mu == 0.0);
}

TEST_CASE("single-point grids return that point") {
  const WorldConfig cfg = canonical_one_region(0.5);
  OptimizerConfig opt;
  opt.sGrid = 1;
  opt.muGrid = 1;
  const BestResponse br = best_response(0, {Policy::constant({0.4, 0.4})}, cfg, opt);
  CHECK(br.policy == Policy::constant({0.0, 0.0}));
}

TEST_CASE("best responses are never beaten by enumeration") {
  const WorldConfig cfg = tiny_two_region();
  const OptimizerConfig opt = grid_5x5();
  for (const Profile& others :
       {Profile{Policy::constant({0.0, 0.25}), Policy::constant({0.45, 0.5})},
        Profile{Policy::constant({0.9, 1.0}), Policy::constant({0.225, 0.75})}}) {
    for (std::size_t i = 0; i < 2; ++i) {
      const BestResponse br = best_response(i, others, cfg, opt);
      const BestResponse ex = enumerate(i, others, cfg, opt);
      CHECK(br.policy == ex.policy);
      CHECK(br.value == ex.value);
    }
  }
}

TEST_CASE("one region: iterated best response is a single best response") {
  const WorldConfig cfg = canonical_one_region(0.5);
  const OptimizerConfig opt;
  const EquilibriumResult eq = iterated_best_response(cfg, opt);
  const BestResponse br = best_response(0, initial_profile(cfg, opt), cfg, opt);
  CHECK(eq.converged);
  CHECK(eq.profile[0] == br.policy);
  CHECK(eq.returns(0) == br.value);
}

TEST_CASE("symmetric regions converge to a symmetric profile") {
  RegionParams a = plain_region(1, "x");
  a.a2 = 0.004;
  RegionParams b = a;
  b.id = 2;
  const WorldConfig cfg = make_world({a, b}, {0.2, 0.2}, 6, 0.0, {{1, 2}});
  const EquilibriumResult eq = iterated_best_response(cfg, grid_5x5());
  CHECK(eq.converged);
  CHECK(eq.profile[0] == eq.profile[1]);
  CHECK(eq.returns(0) == eq.returns(1));
}

TEST_CASE("iterated best response on the tiny instance is an equilibrium") {
  const WorldConfig cfg = tiny_two_region();
  const OptimizerConfig opt = grid_5x5();
  int events = 0;
  const EquilibriumResult eq = iterated_best_response(cfg, opt, [&](const SweepEvent& e) {
    ++events;
    if (e.adopted) CHECK(e.response.value > e.currentValue);
    CHECK(e.response.value >= e.currentValue);
  });
  CHECK(events > 0);
  CHECK(eq.converged);
  const auto returns = evaluate_profile(eq.profile, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    const BestResponse ex = enumerate(i, eq.profile, cfg, opt);
    CHECK(ex.value - returns(static_cast<Eigen::Index>(i)) <= opt.tol);
    CHECK(eq.profile[i].schedule[0].mu >= cfg.baseFloors.floors[i]);
  }
}

TEST_CASE("round budget exhaustion is reported, not thrown") {
  // The first sweep moves savings off zero, so one round cannot confirm.
  const WorldConfig cfg = canonical_one_region(0.5);
  OptimizerConfig opt;
  opt.maxRounds = 1;
  const EquilibriumResult eq = iterated_best_response(cfg, opt);
  CHECK(eq.rounds == 1);
  CHECK_FALSE(eq.converged);
}

TEST_CASE("savings credit raises the chosen savings rate") {
  const OptimizerConfig opt;
  const double base = iterated_best_response(canonical_one_region(0.0), opt).profile[0].schedule[0].s;
  CHECK(base == 0.0);
  double prev = base;
  for (double omega : {0.5, 0.75, 1.0}) {
    const double s = iterated_best_response(canonical_one_region(omega), opt).profile[0].schedule[0].s;
    CHECK(s > base);
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("per-step optimization improves on the constant start") {
  WorldConfig cfg = canonical_one_region(0.5);
  cfg.horizon = 4;
  OptimizerConfig opt = grid_5x5();
  opt.perStep = true;
  const Profile start = initial_profile(cfg, opt);
  REQUIRE_FALSE(start[0].holdConstant);
  CHECK(start[0].schedule.size() == 4);
  const double before = evaluate_profile(start, cfg)(0);
  const BestResponse br = best_response(0, start, cfg, opt);
  CHECK(br.policy.schedule.size() == 4);
  CHECK(br.value >= before);
  CHECK(br.value == evaluate_profile({br.policy}, cfg)(0));
  // Saving in the last step buys nothing.
  CHECK(br.policy.schedule.back().s == 0.0);
  const EquilibriumResult eq = iterated_best_response(cfg, opt);
  CHECK(eq.returns(0) >= br.value);
}
