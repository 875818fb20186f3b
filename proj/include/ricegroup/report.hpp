// Scenario execution and the CSV / JSON files written by the command line tool.
#pragma once

#include "ricegroup/config.hpp"
#include "ricegroup/policy.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ricegroup {

struct RunResult {
  FloorRegime regime = FloorRegime::uniform;
  EquilibriumResult equilibrium;
  Trajectory trajectory;
  MitigationFloorTable baseFloors;
  std::vector<double> effectiveFloors;  // highest effective floor seen over the horizon
  double totalEmissions = 0.0;
  double finalTAT = 0.0;
};

/// Iterated best response, then a recorded roll-out of the resulting profile.
RunResult run_scenario(const ScenarioConfig& cfg, std::optional<FloorRegime> regime = {});

/// printf %.17g, enough digits to round-trip a double.
std::string format_number(double v);

inline constexpr const char* kTrajectoryHeader =
    "t,regionId,K,L,A,Q,Qnet,E,C,s,mu,floor,U,r,infeasibleFlag,mAT,tAT";
inline constexpr const char* kFloorsHeader = "regionId,baseFloor,effectiveFloor";
inline constexpr const char* kCompareHeader =
    "record,regime,regionId,floorSum,floorMean,cumulativeEmissions,meanReturn,finalTAT,baseFloor,"
    "return,returnDelta";

void write_trajectory_csv(const RunResult& run, std::ostream& out);
void write_floors_csv(const RunResult& run, std::ostream& out);
std::string summary_json(const RunResult& run);

/// trajectory.csv, floors.csv and summary.json under outDir (created if needed).
void write_run(const RunResult& run, const std::filesystem::path& outDir);

/// One `total` row per regime, then one `region` row per regime and region.
/// Deltas are taken against the first regime.
void write_compare_csv(const std::vector<RunResult>& runs, std::ostream& out);

/// Runs each regime into outDir/<regime>/ and writes outDir/compare.csv.
std::vector<RunResult> compare_regimes(const ScenarioConfig& cfg,
                                       const std::vector<FloorRegime>& regimes,
                                       const std::filesystem::path& outDir);

}  // namespace ricegroup
