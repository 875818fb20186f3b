#include "ricegroup/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace ricegroup {
namespace {

using nlohmann::json;

// Pulls typed fields out of a JSON object and records every problem instead
// of stopping at the first.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  const json* object(const json& parent, const std::string& key, const std::string& path,
                     bool required) {
    if (!parent.contains(key)) {
      if (required) issues_.push_back(path + ": missing");
      return nullptr;
    }
    const json& v = parent.at(key);
    if (!v.is_object()) {
      issues_.push_back(path + ": expected an object");
      return nullptr;
    }
    return &v;
  }

  void number(const json& parent, const std::string& key, const std::string& path, double& out,
              bool required = false) {
    if (!parent.contains(key)) {
      if (required) issues_.push_back(path + ": missing");
      return;
    }
    const json& v = parent.at(key);
    if (!v.is_number()) {
      issues_.push_back(path + ": expected a number");
      return;
    }
    out = v.get<double>();
  }

  template <typename Int>
  void integer(const json& parent, const std::string& key, const std::string& path, Int& out,
               bool required = false) {
    if (!parent.contains(key)) {
      if (required) issues_.push_back(path + ": missing");
      return;
    }
    const json& v = parent.at(key);
    if (!v.is_number_integer()) {
      issues_.push_back(path + ": expected an integer");
      return;
    }
    if constexpr (std::is_unsigned_v<Int>) {
      if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) {
        out = v.get<Int>();
      } else {
        issues_.push_back(path + ": expected a non-negative integer");
      }
    } else {
      out = v.get<Int>();
    }
  }

  void text(const json& parent, const std::string& key, const std::string& path, std::string& out,
            bool required = false) {
    if (!parent.contains(key)) {
      if (required) issues_.push_back(path + ": missing");
      return;
    }
    const json& v = parent.at(key);
    if (!v.is_string()) {
      issues_.push_back(path + ": expected a string");
      return;
    }
    out = v.get<std::string>();
  }

  void boolean(const json& parent, const std::string& key, const std::string& path, bool& out) {
    if (!parent.contains(key)) return;
    const json& v = parent.at(key);
    if (!v.is_boolean()) {
      issues_.push_back(path + ": expected a boolean");
      return;
    }
    out = v.get<bool>();
  }

  void numbers(const json& parent, const std::string& key, const std::string& path,
               std::vector<double>& out) {
    if (!parent.contains(key)) return;
    const json& v = parent.at(key);
    if (!v.is_array()) {
      issues_.push_back(path + ": expected an array of numbers");
      return;
    }
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        issues_.push_back(path + "[" + std::to_string(i) + "]: expected a number");
        continue;
      }
      out.push_back(v[i].get<double>());
    }
  }

 private:
  std::vector<std::string>& issues_;
};

RegionParams read_region(Reader& rd, const json& j, const std::string& path, const RewardParams& reward) {
  RegionParams r;
  r.alpha = reward.alpha;
  r.beta = reward.beta;
  rd.integer(j, "id", path + ".id", r.id, true);
  r.label = "R" + std::to_string(r.id);
  rd.text(j, "label", path + ".label", r.label);
  rd.text(j, "continent", path + ".continent", r.continent);
  rd.number(j, "K0", path + ".K0", r.K0, true);
  rd.number(j, "L0", path + ".L0", r.L0, true);
  rd.number(j, "A0", path + ".A0", r.A0, true);
  rd.number(j, "gL", path + ".gL", r.gL);
  rd.number(j, "gA", path + ".gA", r.gA);
  rd.number(j, "gamma", path + ".gamma", r.gamma, true);
  rd.number(j, "delta", path + ".delta", r.delta, true);
  rd.number(j, "sigma0", path + ".sigma0", r.sigma0, true);
  rd.number(j, "gSigma", path + ".gSigma", r.gSigma);
  rd.number(j, "theta1", path + ".theta1", r.theta1, true);
  rd.number(j, "theta2", path + ".theta2", r.theta2, true);
  rd.number(j, "a1", path + ".a1", r.a1);
  rd.number(j, "a2", path + ".a2", r.a2);
  rd.numbers(j, "exports", path + ".exports", r.exports);
  rd.number(j, "alpha", path + ".alpha", r.alpha);
  rd.number(j, "beta", path + ".beta", r.beta);
  return r;
}

void read_climate(Reader& rd, std::vector<std::string>& issues, const json& j, ScenarioConfig& cfg) {
  if (j.contains("transfer")) {
    const json& m = j.at("transfer");
    bool ok = m.is_array() && m.size() == 3;
    for (std::size_t r = 0; ok && r < 3; ++r) {
      ok = m[r].is_array() && m[r].size() == 3;
      for (std::size_t c = 0; ok && c < 3; ++c) {
        ok = m[r][c].is_number();
        if (ok) cfg.climate.transfer(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    m[r][c].get<double>();
      }
    }
    if (!ok) issues.push_back("climate.transfer: expected a 3x3 array of numbers (row major)");
  }
  rd.number(j, "forcingCoeff", "climate.forcingCoeff", cfg.climate.forcingCoeff);
  rd.number(j, "preindustrialCarbon", "climate.preindustrialCarbon", cfg.climate.preindustrialCarbon);
  if (const json* t = rd.object(j, "temperature", "climate.temperature", false)) {
    rd.number(*t, "c1", "climate.temperature.c1", cfg.climate.temp.c1);
    rd.number(*t, "c3", "climate.temperature.c3", cfg.climate.temp.c3);
    rd.number(*t, "c4", "climate.temperature.c4", cfg.climate.temp.c4);
    rd.number(*t, "sensitivity", "climate.temperature.sensitivity", cfg.climate.temp.sensitivity);
  }
  if (const json* s = rd.object(j, "initial", "climate.initial", false)) {
    rd.number(*s, "mAT", "climate.initial.mAT", cfg.initialClimate.carbon(0));
    rd.number(*s, "mUP", "climate.initial.mUP", cfg.initialClimate.carbon(1));
    rd.number(*s, "mLO", "climate.initial.mLO", cfg.initialClimate.carbon(2));
    rd.number(*s, "tAT", "climate.initial.tAT", cfg.initialClimate.tAT);
    rd.number(*s, "tLO", "climate.initial.tLO", cfg.initialClimate.tLO);
  }
}

void bound(std::vector<std::string>& issues, bool ok, const std::string& path, const std::string& rule) {
  if (!ok) issues.push_back(path + ": must satisfy " + rule);
}

}  // namespace

ClimateParams<double> default_climate() {
  ClimateParams<double> p;
  // Annualized DICE-2013R coefficients; b21 and b32 keep the equilibrium
  // reservoir ratios 588:360:1720.
  const double b12 = 0.0176;
  const double b23 = 0.0005;
  p.transfer = make_transfer(b12, b12 * 588.0 / 360.0, b23, b23 * 360.0 / 1720.0);
  return p;
}

ClimateState<double> default_initial_climate() {
  ClimateState<double> c;
  c.carbon << 851.0, 460.0, 1740.0;
  c.tAT = 0.8;
  c.tLO = 0.0068;
  return c;
}

ScenarioConfig config_from_json(const json& doc, const std::filesystem::path& baseDir) {
  std::vector<std::string> issues;
  Reader rd(issues);
  ScenarioConfig cfg;
  cfg.baseDir = baseDir;
  cfg.climate = default_climate();
  cfg.initialClimate = default_initial_climate();

  if (!doc.is_object()) throw ConfigSchemaError("configuration must be a JSON object", {"$: expected an object"});

  rd.integer(doc, "horizon", "horizon", cfg.horizon);
  rd.integer(doc, "seed", "seed", cfg.seed);

  if (const json* r = rd.object(doc, "reward", "reward", false)) {
    rd.number(*r, "alpha", "reward.alpha", cfg.reward.alpha);
    rd.number(*r, "omega", "reward.omega", cfg.reward.omega);
    rd.number(*r, "beta", "reward.beta", cfg.reward.beta);
    rd.number(*r, "epsilonC", "reward.epsilonC", cfg.reward.epsilonC);
  }

  if (const json* o = rd.object(doc, "optimizer", "optimizer", false)) {
    rd.integer(*o, "sGrid", "optimizer.sGrid", cfg.optimizer.sGrid);
    rd.number(*o, "sMax", "optimizer.sMax", cfg.optimizer.sMax);
    rd.integer(*o, "muGrid", "optimizer.muGrid", cfg.optimizer.muGrid);
    rd.integer(*o, "maxRounds", "optimizer.maxRounds", cfg.optimizer.maxRounds);
    rd.number(*o, "tol", "optimizer.tol", cfg.optimizer.tol);
    rd.boolean(*o, "perStep", "optimizer.perStep", cfg.optimizer.perStep);
  }

  if (!doc.contains("regions")) {
    issues.push_back("regions: missing");
  } else if (!doc.at("regions").is_array()) {
    issues.push_back("regions: expected an array");
  } else {
    const json& regions = doc.at("regions");
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const std::string path = "regions[" + std::to_string(i) + "]";
      if (!regions[i].is_object()) {
        issues.push_back(path + ": expected an object");
        continue;
      }
      cfg.regions.push_back(read_region(rd, regions[i], path, cfg.reward));
    }
  }

  if (const json* c = rd.object(doc, "climate", "climate", false)) read_climate(rd, issues, *c, cfg);

  if (doc.contains("adjacency")) {
    const json& adj = doc.at("adjacency");
    if (!adj.is_array()) {
      issues.push_back("adjacency: expected an array of [id, id] pairs");
    } else {
      for (std::size_t i = 0; i < adj.size(); ++i) {
        const json& e = adj[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
          issues.push_back("adjacency[" + std::to_string(i) + "]: expected [id, id]");
          continue;
        }
        cfg.adjacency.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    }
  }

  if (const json* f = rd.object(doc, "floors", "floors", false)) {
    std::string regime = "uniform";
    rd.text(*f, "regime", "floors.regime", regime);
    try {
      cfg.floorRegime = parse_floor_regime(regime);
    } catch (const ConfigError&) {
      issues.push_back("floors.regime: unknown regime '" + regime + "' (uniform, dynamic, custom)");
    }
    if (f->contains("source")) {
      std::string source;
      rd.text(*f, "source", "floors.source", source);
      cfg.floorSource = source;
    }
  }

  if (!issues.empty()) throw ConfigSchemaError("configuration does not match the schema", issues);
  return cfg;
}

json config_to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["horizon"] = cfg.horizon;
  doc["seed"] = cfg.seed;
  doc["reward"] = {{"alpha", cfg.reward.alpha},
                   {"omega", cfg.reward.omega},
                   {"beta", cfg.reward.beta},
                   {"epsilonC", cfg.reward.epsilonC}};
  doc["optimizer"] = {{"sGrid", cfg.optimizer.sGrid},     {"sMax", cfg.optimizer.sMax},
                      {"muGrid", cfg.optimizer.muGrid},   {"maxRounds", cfg.optimizer.maxRounds},
                      {"tol", cfg.optimizer.tol},         {"perStep", cfg.optimizer.perStep}};
  json regions = json::array();
  for (const RegionParams& r : cfg.regions) {
    regions.push_back({{"id", r.id},         {"label", r.label},   {"continent", r.continent},
                       {"K0", r.K0},         {"L0", r.L0},         {"A0", r.A0},
                       {"gL", r.gL},         {"gA", r.gA},         {"gamma", r.gamma},
                       {"delta", r.delta},   {"sigma0", r.sigma0}, {"gSigma", r.gSigma},
                       {"theta1", r.theta1}, {"theta2", r.theta2}, {"a1", r.a1},
                       {"a2", r.a2},         {"exports", r.exports},
                       {"alpha", r.alpha},   {"beta", r.beta}});
  }
  doc["regions"] = std::move(regions);

  json transfer = json::array();
  for (Eigen::Index r = 0; r < 3; ++r) {
    transfer.push_back({cfg.climate.transfer(r, 0), cfg.climate.transfer(r, 1), cfg.climate.transfer(r, 2)});
  }
  doc["climate"] = {
      {"transfer", transfer},
      {"forcingCoeff", cfg.climate.forcingCoeff},
      {"preindustrialCarbon", cfg.climate.preindustrialCarbon},
      {"temperature",
       {{"c1", cfg.climate.temp.c1}, {"c3", cfg.climate.temp.c3},
        {"c4", cfg.climate.temp.c4}, {"sensitivity", cfg.climate.temp.sensitivity}}},
      {"initial",
       {{"mAT", cfg.initialClimate.mAT()}, {"mUP", cfg.initialClimate.mUP()},
        {"mLO", cfg.initialClimate.mLO()}, {"tAT", cfg.initialClimate.tAT},
        {"tLO", cfg.initialClimate.tLO}}}};

  json adjacency = json::array();
  for (auto [a, b] : cfg.adjacency) adjacency.push_back({a, b});
  doc["adjacency"] = std::move(adjacency);

  doc["floors"] = {{"regime", to_string(cfg.floorRegime)}};
  if (cfg.floorSource) doc["floors"]["source"] = *cfg.floorSource;
  return doc;
}

std::vector<std::string> check_invariants(const ScenarioConfig& cfg) {
  std::vector<std::string> issues;
  const std::size_t n = cfg.regions.size();
  if (n == 0) issues.push_back("regions: at least one region is required");

  for (std::size_t i = 0; i < n; ++i) {
    const RegionParams& r = cfg.regions[i];
    const std::string p = "regions[" + std::to_string(i) + "]";
    bound(issues, r.id == static_cast<int>(i + 1), p + ".id", "ids 1..R in order (expected " + std::to_string(i + 1) + ")");
    bound(issues, r.K0 >= 0.0, p + ".K0", "K0 >= 0");
    bound(issues, r.L0 > 0.0, p + ".L0", "L0 > 0");
    bound(issues, r.A0 > 0.0, p + ".A0", "A0 > 0");
    bound(issues, r.gL > -1.0, p + ".gL", "gL > -1");
    bound(issues, r.gA > -1.0, p + ".gA", "gA > -1");
    bound(issues, r.gamma > 0.0 && r.gamma < 1.0, p + ".gamma", "0 < gamma < 1");
    bound(issues, r.delta >= 0.0 && r.delta <= 1.0, p + ".delta", "0 <= delta <= 1");
    bound(issues, r.sigma0 >= 0.0, p + ".sigma0", "sigma0 >= 0");
    bound(issues, r.gSigma <= 1.0, p + ".gSigma", "gSigma <= 1");
    bound(issues, r.theta1 >= 0.0, p + ".theta1", "theta1 >= 0");
    bound(issues, r.theta2 > 1.0, p + ".theta2", "theta2 > 1");
    bound(issues, r.a1 >= 0.0, p + ".a1", "a1 >= 0");
    bound(issues, r.a2 >= 0.0, p + ".a2", "a2 >= 0");
    bound(issues, r.alpha > 0.0, p + ".alpha", "alpha > 0");
    bound(issues, r.beta > 0.0 && r.beta <= 1.0, p + ".beta", "0 < beta <= 1");
    for (std::size_t t = 0; t < r.exports.size(); ++t)
      bound(issues, r.exports[t] >= 0.0, p + ".exports[" + std::to_string(t) + "]", "exports >= 0");
  }

  if (!is_column_stochastic(cfg.climate.transfer, 1e-12))
    issues.push_back("climate.transfer: entries must lie in [0,1] and every column must sum to 1");
  bound(issues, cfg.climate.forcingCoeff > 0.0, "climate.forcingCoeff", "forcingCoeff > 0");
  bound(issues, cfg.climate.preindustrialCarbon > 0.0, "climate.preindustrialCarbon", "preindustrialCarbon > 0");
  bound(issues, cfg.climate.temp.sensitivity > 0.0, "climate.temperature.sensitivity", "sensitivity > 0");
  bound(issues, cfg.climate.temp.c1 >= 0.0, "climate.temperature.c1", "c1 >= 0");
  bound(issues, cfg.climate.temp.c3 >= 0.0, "climate.temperature.c3", "c3 >= 0");
  bound(issues, cfg.climate.temp.c4 >= 0.0 && cfg.climate.temp.c4 <= 1.0, "climate.temperature.c4", "0 <= c4 <= 1");
  bound(issues, cfg.initialClimate.mAT() > 0.0, "climate.initial.mAT", "mAT > 0");
  bound(issues, cfg.initialClimate.mUP() >= 0.0, "climate.initial.mUP", "mUP >= 0");
  bound(issues, cfg.initialClimate.mLO() >= 0.0, "climate.initial.mLO", "mLO >= 0");

  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < cfg.adjacency.size(); ++e) {
    auto [a, b] = cfg.adjacency[e];
    const std::string p = "adjacency[" + std::to_string(e) + "]";
    const auto in = [n](int id) { return id >= 1 && static_cast<std::size_t>(id) <= n; };
    if (!in(a) || !in(b)) issues.push_back(p + ": references an unknown region");
    if (a == b) issues.push_back(p + ": self loop on region " + std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second) issues.push_back(p + ": duplicate edge");
  }

  bound(issues, cfg.reward.alpha > 0.0, "reward.alpha", "alpha > 0");
  bound(issues, cfg.reward.omega >= 0.0 && cfg.reward.omega <= 1.0, "reward.omega", "0 <= omega <= 1");
  bound(issues, cfg.reward.beta > 0.0 && cfg.reward.beta <= 1.0, "reward.beta", "0 < beta <= 1");
  bound(issues, cfg.reward.epsilonC > 0.0, "reward.epsilonC", "epsilonC > 0");

  bound(issues, cfg.optimizer.sGrid >= 2, "optimizer.sGrid", "sGrid >= 2");
  bound(issues, cfg.optimizer.muGrid >= 2, "optimizer.muGrid", "muGrid >= 2");
  bound(issues, cfg.optimizer.sMax >= 0.0 && cfg.optimizer.sMax < 1.0, "optimizer.sMax", "0 <= sMax < 1");
  bound(issues, cfg.optimizer.maxRounds >= 1, "optimizer.maxRounds", "maxRounds >= 1");
  bound(issues, cfg.optimizer.tol > 0.0, "optimizer.tol", "tol > 0");

  switch (cfg.floorRegime) {
    case FloorRegime::uniform:
      break;
    case FloorRegime::dynamic:
      if (n != kTableRegions)
        issues.push_back("floors.regime: dynamic regime requires 27 regions (config has " +
                         std::to_string(n) + ")");
      break;
    case FloorRegime::custom:
      if (!cfg.floorSource) {
        issues.push_back("floors.source: custom regime requires a source file");
        break;
      }
      try {
        const auto table = load_floor_table(FloorRegime::custom, cfg.baseDir / *cfg.floorSource);
        if (table.size() != n)
          issues.push_back("floors.source: table has " + std::to_string(table.size()) +
                           " entries but config has " + std::to_string(n) + " regions");
      } catch (const ConfigError& e) {
        issues.push_back("floors.source: " + std::string(e.what()));
        for (const auto& s : e.issues()) issues.push_back("floors.source: " + s);
      }
      break;
  }
  return issues;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigReadError("cannot read configuration '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigSchemaError("configuration '" + path.string() + "' is not valid JSON", {e.what()});
  }
  ScenarioConfig cfg = config_from_json(doc, path.parent_path());
  if (auto issues = check_invariants(cfg); !issues.empty())
    throw ConfigInvariantError("configuration violates model invariants", std::move(issues));
  return cfg;
}

MitigationFloorTable scenario_floor_table(const ScenarioConfig& cfg, std::optional<FloorRegime> regime) {
  const FloorRegime r = regime.value_or(cfg.floorRegime);
  const std::size_t n = cfg.regions.size();
  switch (r) {
    case FloorRegime::uniform:
      if (n == kTableRegions) return load_floor_table(FloorRegime::uniform);
      return {std::vector<double>(n, kUniformFloor), FloorRegime::uniform};
    case FloorRegime::dynamic:
      if (n != kTableRegions)
        throw ConfigInvariantError("dynamic regime requires 27 regions",
                                   {"floors.regime: dynamic regime requires 27 regions (config has " +
                                    std::to_string(n) + ")"});
      return load_floor_table(FloorRegime::dynamic);
    case FloorRegime::custom: {
      if (!cfg.floorSource)
        throw ConfigInvariantError("custom regime requires a source file",
                                   {"floors.source: custom regime requires a source file"});
      auto table = load_floor_table(FloorRegime::custom, cfg.baseDir / *cfg.floorSource);
      if (table.size() != n)
        throw ConfigInvariantError("custom floor table size mismatch",
                                   {"floors.source: table has " + std::to_string(table.size()) +
                                    " entries but config has " + std::to_string(n) + " regions"});
      return table;
    }
  }
  throw std::logic_error("unreachable floor regime");
}

WorldConfig build_world(const ScenarioConfig& cfg, std::optional<FloorRegime> regime) {
  WorldConfig w;
  w.params.regions = cfg.regions;
  w.params.climate = cfg.climate;
  w.params.initialClimate = cfg.initialClimate;
  w.params.reward = cfg.reward;
  w.baseFloors = scenario_floor_table(cfg, regime);
  w.horizon = cfg.horizon;

  AdjacencyGraph graph;
  std::map<int, std::string> continents;
  for (const RegionParams& r : cfg.regions) {
    graph.regions.push_back(r.id);
    continents[r.id] = r.continent;
  }
  graph.edges = cfg.adjacency;
  w.grouping = form_groups(graph, continents);
  return w;
}

}  // namespace ricegroup
