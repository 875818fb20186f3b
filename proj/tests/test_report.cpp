#include "doctest.h"

#include "fixtures.hpp"
#include "ricegroup/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ricegroup;
using namespace ricegroup::testing;

namespace {

ScenarioConfig small_scenario(std::size_t horizon) {
  ScenarioConfig cfg;
  cfg.climate = default_climate();
  cfg.initialClimate = default_initial_climate();
  RegionParams a = plain_region(1, "x");
  RegionParams b = plain_region(2, "x");
  RegionParams c = plain_region(3, "y");
  a.a2 = 0.004;
  b.exports = {2.0};
  c.sigma0 = 0.3;
  cfg.regions = {a, b, c};
  cfg.adjacency = {{1, 2}, {2, 3}};
  cfg.horizon = horizon;
  cfg.optimizer.sGrid = 4;
  cfg.optimizer.muGrid = 5;
  return cfg;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("numbers use 17 significant digits and round-trip") {
  CHECK(format_number(0.9) == "0.90000000000000002");
  CHECK(format_number(1.0) == "1");
  for (double v : {0.1, 1.0 / 3.0, -15427.543533964663, 1e-9, 123456789.123})
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
}

TEST_CASE("trajectory has one row per step and region") {
  const RunResult run = run_scenario(small_scenario(4));
  std::ostringstream out;
  write_trajectory_csv(run, out);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 1 + 4 * 3);
  CHECK(rows[0] == kTrajectoryHeader);
  CHECK(fields(rows[1]).size() == 17);
  CHECK(fields(rows[1])[0] == "0");
  CHECK(fields(rows[1])[1] == "1");
  CHECK(fields(rows[12])[0] == "3");
  CHECK(fields(rows[12])[1] == "3");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto f = fields(rows[r]);
    CHECK(std::stod(f[10]) >= std::stod(f[11]));  // mu >= floor
  }
}

TEST_CASE("empty horizon writes headers only and zero returns") {
  const RunResult run = run_scenario(small_scenario(0));
  std::ostringstream traj;
  write_trajectory_csv(run, traj);
  CHECK(traj.str() == std::string(kTrajectoryHeader) + "\n");
  CHECK(run.totalEmissions == 0.0);
  const auto summary = nlohmann::json::parse(summary_json(run));
  for (const auto& r : summary["regions"]) CHECK(r["return"].get<double>() == 0.0);
  CHECK(summary["finalTAT"].get<double>() == default_initial_climate().tAT);
}

TEST_CASE("floors file keeps effective at or above base") {
  const RunResult run = run_scenario(small_scenario(5));
  std::ostringstream out;
  write_floors_csv(run, out);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == kFloorsHeader);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto f = fields(rows[r]);
    CHECK(std::stod(f[1]) == 0.9);
    CHECK(std::stod(f[2]) >= std::stod(f[1]));
  }
}

TEST_CASE("summary lists the run totals") {
  const RunResult run = run_scenario(small_scenario(5));
  const auto s = nlohmann::json::parse(summary_json(run));
  CHECK(s["regime"] == "uniform");
  CHECK(s["converged"].get<bool>() == run.equilibrium.converged);
  CHECK(s["regions"].size() == 3);
  CHECK(s["totalEmissions"].get<double>() == run.totalEmissions);
  CHECK(s["infeasibleCount"].get<std::size_t>() == run.trajectory.infeasibleCount);
  CHECK(s["regions"][2]["mu"].get<double>() >= 0.9);
}

TEST_CASE("self comparison has zero deltas") {
  const auto dir = std::filesystem::temp_directory_path() / "ricegroup_self_compare";
  std::filesystem::remove_all(dir);
  const auto runs = compare_regimes(small_scenario(4), {FloorRegime::uniform, FloorRegime::uniform}, dir);
  REQUIRE(runs.size() == 2);
  CHECK(std::filesystem::exists(dir / "uniform" / "trajectory.csv"));
  CHECK(std::filesystem::exists(dir / "uniform_1" / "summary.json"));

  std::ifstream in(dir / "compare.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = lines(buf.str());
  REQUIRE(rows.size() == 1 + 2 + 2 * 3);
  CHECK(rows[0] == kCompareHeader);
  auto t0 = fields(rows[1]);
  auto t1 = fields(rows[2]);
  CHECK(t0[0] == "total");
  t0.erase(t0.begin(), t0.begin() + 2);
  t1.erase(t1.begin(), t1.begin() + 2);
  CHECK(t0 == t1);
  for (std::size_t r = 3; r < rows.size(); ++r) {
    const auto f = fields(rows[r]);
    CHECK(f[0] == "region");
    CHECK(f.size() == 11);
    CHECK(std::stod(f[10]) == 0.0);
  }
}

TEST_CASE("compare needs two regimes") {
  CHECK_THROWS_AS(compare_regimes(small_scenario(1), {FloorRegime::uniform}, "/tmp/unused"),
                  std::invalid_argument);
}
