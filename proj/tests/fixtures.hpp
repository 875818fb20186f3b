// Small hand-built worlds shared by the unit and acceptance suites.
#pragma once

#include "ricegroup/config.hpp"
#include "ricegroup/policy.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ricegroup::testing {

inline std::filesystem::path data_dir() { return RICEGROUP_DATA_DIR; }
inline std::filesystem::path bundled_config() { return data_dir() / "rice27.json"; }

inline RegionParams plain_region(int id, std::string continent = "solo") {
  RegionParams r;
  r.id = id;
  r.label = "R" + std::to_string(id);
  r.continent = std::move(continent);
  r.K0 = 100.0;
  r.L0 = 100.0;
  r.A0 = 0.33;
  r.gamma = 0.3;
  r.delta = 0.1;
  r.sigma0 = 0.1;
  r.theta1 = 0.05;
  r.theta2 = 2.6;
  r.alpha = 1.45;
  r.beta = 0.95;
  return r;
}

inline Grouping group_by_continent(const std::vector<RegionParams>& regions,
                                   std::vector<std::pair<int, int>> edges = {}) {
  AdjacencyGraph g;
  std::map<int, std::string> continents;
  for (const auto& r : regions) {
    g.regions.push_back(r.id);
    continents[r.id] = r.continent;
  }
  g.edges = std::move(edges);
  return form_groups(g, continents);
}

inline WorldConfig make_world(std::vector<RegionParams> regions, std::vector<double> floors,
                              std::size_t horizon, double omega = 0.0,
                              std::vector<std::pair<int, int>> edges = {}) {
  WorldConfig w;
  w.grouping = group_by_continent(regions, std::move(edges));
  w.params.regions = std::move(regions);
  w.params.climate = default_climate();
  w.params.initialClimate = default_initial_climate();
  w.params.reward.omega = omega;
  w.baseFloors = {std::move(floors), FloorRegime::custom};
  w.horizon = horizon;
  return w;
}

/// One region, no damages, no exports, a 15-step horizon: the capital channel
/// alone does not repay saving at omega = 0.
inline WorldConfig canonical_one_region(double omega) {
  RegionParams r = plain_region(1);
  r.a1 = 0.0;
  r.a2 = 0.0;
  return make_world({r}, {0.0}, 15, omega);
}

/// Two adjacent same-continent regions with damages, horizon 3.
inline WorldConfig tiny_two_region() {
  RegionParams a = plain_region(1, "north");
  RegionParams b = plain_region(2, "north");
  a.a2 = 0.004;
  b.a2 = 0.006;
  b.K0 = 60.0;
  b.L0 = 80.0;
  b.sigma0 = 0.3;
  b.exports = {1.0};
  return make_world({a, b}, {0.2, 0.5}, 3, 0.0, {{1, 2}});
}

inline OptimizerConfig grid_5x5() {
  OptimizerConfig o;
  o.sGrid = 5;
  o.muGrid = 5;
  return o;
}

}  // namespace ricegroup::testing
