#include "ricegroup/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ricegroup {
namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << body;
}

template <typename Writer>
void write_with(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  writer(out);
}

double mean_return(const RunResult& run) {
  const auto& r = run.equilibrium.returns;
  return r.size() == 0 ? 0.0 : r.mean();
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunResult run_scenario(const ScenarioConfig& cfg, std::optional<FloorRegime> regime) {
  const WorldConfig world = build_world(cfg, regime);
  RunResult run;
  run.regime = regime.value_or(cfg.floorRegime);
  run.baseFloors = world.baseFloors;
  run.equilibrium = iterated_best_response(world, cfg.optimizer);
  run.trajectory = simulate(run.equilibrium.profile, world);

  run.effectiveFloors = world.baseFloors.floors;
  for (const StepTrace& step : run.trajectory.steps) {
    for (std::size_t i = 0; i < step.floors.size(); ++i)
      run.effectiveFloors[i] = std::max(run.effectiveFloors[i], step.floors[i]);
    run.totalEmissions += step.globalEmissions;
  }
  run.finalTAT = run.trajectory.final.climate.tAT;
  return run;
}

void write_trajectory_csv(const RunResult& run, std::ostream& out) {
  out << kTrajectoryHeader << '\n';
  for (const StepTrace& step : run.trajectory.steps) {
    const std::string mAT = format_number(step.state.climate.mAT());
    const std::string tAT = format_number(step.state.climate.tAT);
    for (std::size_t i = 0; i < step.regions.size(); ++i) {
      const RegionState& st = step.state.regions[i];
      const RegionStep& r = step.regions[i];
      out << step.state.t << ',' << (i + 1) << ',' << format_number(st.K) << ','
          << format_number(st.L) << ',' << format_number(st.A) << ',' << format_number(r.Q) << ','
          << format_number(r.Qnet) << ',' << format_number(r.E) << ',' << format_number(r.C) << ','
          << format_number(r.action.s) << ',' << format_number(r.action.mu) << ','
          << format_number(r.floor) << ',' << format_number(r.U) << ','
          << format_number(r.reward) << ',' << (r.infeasible ? 1 : 0) << ',' << mAT << ',' << tAT
          << '\n';
    }
  }
}

void write_floors_csv(const RunResult& run, std::ostream& out) {
  out << kFloorsHeader << '\n';
  for (std::size_t i = 0; i < run.baseFloors.size(); ++i) {
    out << (i + 1) << ',' << format_number(run.baseFloors.floors[i]) << ','
        << format_number(run.effectiveFloors[i]) << '\n';
  }
}

std::string summary_json(const RunResult& run) {
  nlohmann::ordered_json doc;
  doc["regime"] = to_string(run.regime);
  doc["converged"] = run.equilibrium.converged;
  doc["rounds"] = run.equilibrium.rounds;
  doc["infeasibleCount"] = run.trajectory.infeasibleCount;
  doc["totalEmissions"] = run.totalEmissions;
  doc["finalTAT"] = run.finalTAT;
  doc["meanReturn"] = mean_return(run);
  auto regions = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < run.baseFloors.size(); ++i) {
    nlohmann::ordered_json r;
    r["regionId"] = i + 1;
    r["return"] = run.equilibrium.returns(static_cast<Eigen::Index>(i));
    const Policy& p = run.equilibrium.profile[i];
    if (p.holdConstant) {
      r["s"] = p.schedule.front().s;
      r["mu"] = p.schedule.front().mu;
    }
    regions.push_back(std::move(r));
  }
  doc["regions"] = std::move(regions);
  return doc.dump(2) + "\n";
}

void write_run(const RunResult& run, const std::filesystem::path& outDir) {
  std::filesystem::create_directories(outDir);
  write_with(outDir / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(run, o); });
  write_with(outDir / "floors.csv", [&](std::ostream& o) { write_floors_csv(run, o); });
  write_file(outDir / "summary.json", summary_json(run));
}

void write_compare_csv(const std::vector<RunResult>& runs, std::ostream& out) {
  out << kCompareHeader << '\n';
  for (const RunResult& run : runs) {
    out << "total," << to_string(run.regime) << ",," << format_number(run.baseFloors.sum()) << ','
        << format_number(run.baseFloors.mean()) << ',' << format_number(run.totalEmissions) << ','
        << format_number(mean_return(run)) << ',' << format_number(run.finalTAT) << ",,,\n";
  }
  if (runs.empty()) return;
  const Eigen::VectorXd& reference = runs.front().equilibrium.returns;
  for (const RunResult& run : runs) {
    for (std::size_t i = 0; i < run.baseFloors.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      const double ret = run.equilibrium.returns(k);
      out << "region," << to_string(run.regime) << ',' << (i + 1) << ",,,,,,"
          << format_number(run.baseFloors.floors[i]) << ',' << format_number(ret) << ','
          << format_number(ret - reference(k)) << '\n';
    }
  }
}

std::vector<RunResult> compare_regimes(const ScenarioConfig& cfg,
                                       const std::vector<FloorRegime>& regimes,
                                       const std::filesystem::path& outDir) {
  if (regimes.size() < 2) throw std::invalid_argument("compare needs at least two regimes");
  std::vector<RunResult> runs;
  runs.reserve(regimes.size());
  for (std::size_t k = 0; k < regimes.size(); ++k) {
    runs.push_back(run_scenario(cfg, regimes[k]));
    // uniform,uniform would otherwise write into the same directory twice.
    std::string dir = to_string(regimes[k]);
    if (std::count(regimes.begin(), regimes.begin() + static_cast<std::ptrdiff_t>(k), regimes[k]) > 0)
      dir += "_" + std::to_string(k);
    write_run(runs.back(), outDir / dir);
  }
  write_with(outDir / "compare.csv", [&](std::ostream& o) { write_compare_csv(runs, o); });
  return runs;
}

}  // namespace ricegroup
