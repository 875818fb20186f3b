#include "ricegroup/negotiation.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ricegroup {
namespace {

constexpr std::array<double, kTableRegions> kDynamicFloors = {
    0.9, 0.9, 0.6, 0.2, 0.9, 0.8, 0.7, 0.7, 0.7, 0.5, 0.9, 0.7, 0.7, 0.7,
    0.6, 0.1, 0.7, 0.4, 0.2, 0.7, 0.9, 0.7, 0.6, 0.6, 0.7, 0.7, 0.9};

std::size_t index_of(int regionId) { return static_cast<std::size_t>(regionId - 1); }

double intended_emissions(const RegionParams& p, const RegionState& st, Action a) {
  return emissions(st.sigma, a.mu, gross_output(st.A, st.K, st.L, p.gamma));
}

// Union-find over positions in AdjacencyGraph::regions.
struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

std::string to_string(FloorRegime regime) {
  switch (regime) {
    case FloorRegime::uniform: return "uniform";
    case FloorRegime::dynamic: return "dynamic";
    case FloorRegime::custom: return "custom";
  }
  return "custom";
}

FloorRegime parse_floor_regime(const std::string& name) {
  if (name == "uniform") return FloorRegime::uniform;
  if (name == "dynamic") return FloorRegime::dynamic;
  if (name == "custom") return FloorRegime::custom;
  throw ConfigError("unknown floor regime '" + name + "'");
}

std::span<const double, kTableRegions> dynamic_grouping_floors() { return kDynamicFloors; }

double MitigationFloorTable::sum() const {
  return std::accumulate(floors.begin(), floors.end(), 0.0);
}

double MitigationFloorTable::mean() const {
  return floors.empty() ? 0.0 : sum() / static_cast<double>(floors.size());
}

MitigationFloorTable make_custom_floor_table(std::vector<double> floors) {
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < floors.size(); ++i) {
    const double f = floors[i];
    if (!(f >= 0.0 && f <= 1.0))
      issues.push_back("floors[" + std::to_string(i) + "] (region " + std::to_string(i + 1) +
                       ") = " + std::to_string(f) + " is outside [0,1]");
  }
  if (floors.empty()) issues.push_back("floors: table is empty");
  if (!issues.empty()) throw ConfigInvariantError("invalid custom floor table", issues);
  return {std::move(floors), FloorRegime::custom};
}

MitigationFloorTable load_floor_table(FloorRegime regime,
                                      const std::optional<std::filesystem::path>& source) {
  switch (regime) {
    case FloorRegime::uniform:
      return {std::vector<double>(kTableRegions, kUniformFloor), FloorRegime::uniform};
    case FloorRegime::dynamic:
      return {std::vector<double>(kDynamicFloors.begin(), kDynamicFloors.end()),
              FloorRegime::dynamic};
    case FloorRegime::custom:
      break;
  }
  if (!source) throw ConfigError("custom floor regime requires a source file");
  std::ifstream in(*source);
  if (!in) throw ConfigReadError("cannot read floor table '" + source->string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigSchemaError("floor table '" + source->string() + "' is not valid JSON",
                            {e.what()});
  }
  const nlohmann::json& values = doc.is_object() && doc.contains("floors") ? doc["floors"] : doc;
  if (!values.is_array())
    throw ConfigSchemaError("floor table must be an array or {\"floors\": [...]}",
                            {source->string() + ": floors is not an array"});
  std::vector<double> floors;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number())
      throw ConfigSchemaError("floor table entry is not a number",
                              {"floors[" + std::to_string(i) + "] (region " +
                               std::to_string(i + 1) + ") is not a number"});
    floors.push_back(values[i].get<double>());
  }
  return make_custom_floor_table(std::move(floors));
}

void AdjacencyGraph::validate() const {
  const std::set<int> known(regions.begin(), regions.end());
  if (known.size() != regions.size()) throw std::invalid_argument("duplicate region id in graph");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (!known.count(a) || !known.count(b))
      throw std::invalid_argument("edge " + std::to_string(a) + "-" + std::to_string(b) +
                                  " references an unknown region");
    if (a == b) throw std::invalid_argument("self loop on region " + std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second)
      throw std::invalid_argument("edge " + std::to_string(a) + "-" + std::to_string(b) +
                                  " listed twice");
  }
}

Grouping form_groups(const AdjacencyGraph& graph, const std::map<int, std::string>& continents) {
  graph.validate();
  std::vector<int> ids = graph.regions;
  std::sort(ids.begin(), ids.end());
  std::map<int, std::size_t> position;
  for (std::size_t i = 0; i < ids.size(); ++i) position[ids[i]] = i;

  DisjointSets sets(ids.size());
  for (auto [a, b] : graph.edges) {
    if (continents.at(a) == continents.at(b)) sets.unite(position[a], position[b]);
  }

  // Roots are the lowest member of each component, so walking ids in order
  // emits groups sorted by lowest member with sorted members.
  Grouping g;
  std::map<std::size_t, std::size_t> rootToGroup;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto [it, inserted] = rootToGroup.try_emplace(root, g.groups.size());
    if (inserted) g.groups.emplace_back();
    g.groups[it->second].push_back(ids[i]);
    g.groupOf[ids[i]] = it->second;
  }
  return g;
}

std::vector<Proposal> propose_floors(int proposer, const Grouping& grouping, Action intended) {
  std::vector<Proposal> out;
  for (int member : grouping.group_of(proposer)) {
    if (member != proposer) out.push_back({proposer, member, intended.mu});
  }
  return out;
}

double lookahead_value(const NegotiationContext& ctx, int target, double mu) {
  const std::size_t ti = index_of(target);
  const RegionParams& p = ctx.params.regions.at(ti);
  const RegionState& st = ctx.state.regions.at(ti);
  const Action a{ctx.intended[ti].s, mu};

  double othersE = 0.0;
  for (std::size_t j = 0; j < ctx.params.size(); ++j) {
    if (j == ti) continue;
    othersE += ctx.intendedEmissions.empty()
                   ? intended_emissions(ctx.params.regions[j], ctx.state.regions[j], ctx.intended[j])
                   : ctx.intendedEmissions[j];
  }

  const RegionStep now = region_step(p, st, ctx.state.climate.tAT, a, ctx.state.t, ctx.params.reward);
  const auto climate = climate_step(ctx.state.climate, othersE + now.E, ctx.params.climate);
  const RegionStep next = region_step(p, now.next, climate.tAT, a, ctx.state.t + 1, ctx.params.reward);
  return now.reward + p.beta * next.reward;
}

std::vector<Decision> evaluate_proposals(int target, std::span<const Proposal> incoming,
                                         const NegotiationContext& ctx) {
  std::vector<Decision> out;
  out.reserve(incoming.size());
  const double baseFloor = ctx.base.floor(target);
  const double currentMu = ctx.intended[index_of(target)].mu;
  std::optional<double> currentValue;
  for (const Proposal& prop : incoming) {
    if (prop.target != target) throw std::invalid_argument("proposal addressed to another region");
    bool accepted = prop.requestedFloor <= baseFloor || prop.requestedFloor <= currentMu;
    if (!accepted) {
      if (!currentValue) currentValue = lookahead_value(ctx, target, currentMu);
      accepted = lookahead_value(ctx, target, prop.requestedFloor) >= *currentValue;
    }
    out.push_back({target, prop, accepted});
  }
  return out;
}

MitigationFloorTable resolve_floors(std::span<const Decision> decisions,
                                    const MitigationFloorTable& base) {
  MitigationFloorTable out = base;
  bool raised = false;
  for (const Decision& d : decisions) {
    if (!d.accepted) continue;
    double& f = out.floors.at(index_of(d.target));
    if (d.proposal.requestedFloor > f) {
      f = d.proposal.requestedFloor;
      raised = true;
    }
  }
  if (raised) out.regime = FloorRegime::custom;
  return out;
}

NegotiationRound negotiate(const WorldParams& params, const WorldState& state,
                           std::span<const Action> actions, const MitigationFloorTable& base,
                           const Grouping& grouping) {
  const std::size_t n = params.size();
  std::vector<Action> intended(n);
  for (std::size_t i = 0; i < n; ++i) intended[i] = clamp_action(actions[i], base.floors.at(i));

  NegotiationRound round;
  std::vector<std::vector<Proposal>> inbox(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Proposal& p : propose_floors(static_cast<int>(i + 1), grouping, intended[i])) {
      inbox[index_of(p.target)].push_back(p);
      round.proposals.push_back(p);
    }
  }

  if (round.proposals.empty()) {
    round.effective = base;
    return round;
  }

  std::vector<double> intendedE(n);
  for (std::size_t i = 0; i < n; ++i)
    intendedE[i] = intended_emissions(params.regions[i], state.regions[i], intended[i]);
  const NegotiationContext ctx{params, state, intended, base, intendedE};
  for (std::size_t i = 0; i < n; ++i) {
    auto decided = evaluate_proposals(static_cast<int>(i + 1), inbox[i], ctx);
    round.decisions.insert(round.decisions.end(), decided.begin(), decided.end());
  }
  round.effective = resolve_floors(round.decisions, base);
  return round;
}

}  // namespace ricegroup
