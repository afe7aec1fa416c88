#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "paths.hpp"
#include "seamquest/error.hpp"
#include "seamquest/harness.hpp"

namespace seamquest {
namespace {

using json = nlohmann::json;

Scenario two_galleries() {
  return load_scenario(R"({
    "seed": 5, "duration": 12.0, "tick": 0.1,
    "floorplan": {
      "bounds": {"min": [0, 0], "max": [12, 4]},
      "galleries": [{"id": "west", "min": [0, 0], "max": [4, 4]},
                    {"id": "east", "min": [8, 0], "max": [12, 4]}],
      "artifacts": [{"id": "a", "position": [11, 2], "gallery": "east"}]
    },
    "beacons": [{"id": "b", "artifact": "a"}],
    "quests": {"ghosts": [{"ghost": "Anubis", "artifact": "a"}],
               "final_ghost": {"ghost": "Hermes", "museum": "Agora"}},
    "visitor": {"position": [1, 2]},
    "visitor_script": [{"t": 1.0, "cmd": "walk", "direction": 0.0, "duration": 8.0}]
  })");
}

TEST(Run, DeterministicLogs) {
  const Scenario s = test::bundled("shelved_gallery");
  EXPECT_EQ(run(s).log.str(), run(s).log.str());
}

TEST(Run, NoGhostBeforeTheEncounterDelay) {
  Scenario s = test::bundled("smoke");
  s.duration = 4.0;
  const std::string log = run(s).log.str();
  EXPECT_EQ(log.find("GhostAppeared"), std::string::npos);
}

TEST(Run, LogLinesAreWellFormed) {
  const RunResult r = run(test::bundled("crowd_blockage"));
  double last = 0.0;
  std::size_t rssi = 0;
  for (const auto& line : r.log.lines()) {
    const json j = json::parse(line);
    ASSERT_TRUE(j.contains("t") && j.contains("kind") && j.contains("payload"));
    ASSERT_GE(j["t"].get<double>(), last);
    last = j["t"].get<double>();
    if (j["kind"] == "rssi") {
      ++rssi;
      EXPECT_EQ(j["payload"]["detected"].get<bool>(), !j["payload"]["rssi"].is_null());
    }
  }
  EXPECT_EQ(rssi, 301u);  // tick 0 through tick 300, one beacon
}

TEST(Metrics, StaticVisitorDwellsTheWholeRun) {
  Scenario s = test::bundled("smoke");
  s.visitor_script.clear();
  const RunMetrics m = run(s).metrics;
  EXPECT_EQ(m.dwell_seconds("hall"), s.duration);
  EXPECT_EQ(m.visit_order, std::vector<std::string>{"hall"});
  EXPECT_EQ(m.outside_ticks, 0u);
}

TEST(Metrics, TwoGalleryWalkMatchesBruteForce) {
  const Scenario s = two_galleries();
  const RunResult r = run(s);
  // recompute from the pose lines with a direct rectangle test
  std::size_t west = 0, east = 0, outside = 0;
  std::vector<std::string> order;
  for (const auto& line : r.log.lines()) {
    const json j = json::parse(line);
    if (j["kind"] != "pose") continue;
    const double x = j["payload"]["x"], y = j["payload"]["y"];
    const char* g = nullptr;
    if (x >= 0 && x <= 4 && y >= 0 && y <= 4) g = "west";
    else if (x >= 8 && x <= 12 && y >= 0 && y <= 4) g = "east";
    if (g == nullptr) {
      ++outside;
      continue;
    }
    (std::string(g) == "west" ? west : east)++;
    if (order.empty() || order.back() != g) order.push_back(g);
  }
  EXPECT_EQ(r.metrics.visit_order, order);
  EXPECT_EQ(r.metrics.visit_order, (std::vector<std::string>{"west", "east"}));
  EXPECT_EQ(r.metrics.dwell_ticks.at("west"), west);
  EXPECT_EQ(r.metrics.dwell_ticks.at("east"), east);
  EXPECT_EQ(r.metrics.outside_ticks, outside);
  EXPECT_GT(outside, 0u);
}

TEST(Metrics, EmptyLogIsZero) {
  const Scenario s = two_galleries();
  const RunMetrics m = compute_metrics({}, s.floorplan, s);
  EXPECT_EQ(m.total_ticks, 0u);
  EXPECT_EQ(m.dwell_seconds("west"), 0.0);
  EXPECT_TRUE(m.visit_order.empty());
  EXPECT_EQ(m.lost_fraction(), 0.0);
}

TEST(Metrics, MalformedLineReportsItsNumber) {
  const Scenario s = two_galleries();
  const std::vector<std::string> lines{
      R"({"t":0.1,"kind":"pose","payload":{"x":1,"y":1,"facing":0,"raised":false}})",
      R"({"t":0.2,"kind":"pose","payload":{"x":1}})",
  };
  try {
    compute_metrics(lines, s.floorplan, s);
    FAIL() << "expected LogParseError";
  } catch (const LogParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(compute_metrics({"not json"}, s.floorplan, s), LogParseError);
}

TEST(Metrics, CompletionTimesFromQuestCompleted) {
  const RunResult r = run(test::bundled("smoke"));
  ASSERT_EQ(r.metrics.completion_times.size(), 1u);
  ASSERT_TRUE(r.metrics.completion_times[0]);
  EXPECT_DOUBLE_EQ(*r.metrics.completion_times[0], 15.8);
  const json j = json::parse(metrics_to_json(r.metrics));
  EXPECT_EQ(j["completion_times"][0], 15.8);
}

TEST(Metrics, JsonRoundTripsLogMetrics) {
  const Scenario s = test::bundled("shelved_gallery");
  const RunResult r = run(s);
  const RunMetrics again = compute_metrics(r.log.lines(), s.floorplan, s);
  EXPECT_EQ(metrics_to_json(again), metrics_to_json(r.metrics));
}

CoverageMap square_map(double resolution, std::optional<Wall> wall = std::nullopt) {
  Scenario s = load_scenario_file(test::data_dir() / "square_room.json");
  if (wall) s.floorplan.walls.push_back(*wall);
  CoverageOptions o;
  o.resolution = resolution;
  return coverage_map(s.floorplan, s.beacons, s.radio, o);
}

TEST(Coverage, FourFoldSymmetry) {
  const CoverageMap m = square_map(0.5);
  ASSERT_EQ(m.columns, 20u);
  ASSERT_EQ(m.rows, 20u);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.columns; ++c) {
      const auto v = *m.at(c, r).rssi[0];
      EXPECT_NEAR(v, *m.at(m.columns - 1 - c, r).rssi[0], 1e-9);
      EXPECT_NEAR(v, *m.at(c, m.rows - 1 - r).rssi[0], 1e-9);
      EXPECT_NEAR(v, *m.at(r, c).rssi[0], 1e-9);  // diagonal
    }
  }
}

TEST(Coverage, WallShadowIsExactlyTheWallLoss) {
  const Wall wall{"w", {{7, 0}, {7, 10}}, 10.0};
  const CoverageMap m = square_map(0.5, wall);
  // column 17 has centre x = 8.75 (behind the wall), its mirror column 2 has x = 1.25
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double shadowed = *m.at(17, r).rssi[0];
    const double open = *m.at(2, r).rssi[0];
    EXPECT_NEAR(open - shadowed, 10.0, 1e-9) << "row " << r;
  }
}

TEST(Coverage, FarCellsAreUndetectedAndObstaclesUnreachable) {
  Scenario s = load_scenario_file(test::data_dir() / "square_room.json");
  s.radio.detect_floor = -70.0;  // p_ref - 22 log10(d) < -70 beyond d ~ 3.16 m
  s.floorplan.obstacles.push_back({"s", "shelf", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 5.0});
  CoverageOptions o;
  o.resolution = 1.0;
  const CoverageMap m = coverage_map(s.floorplan, s.beacons, s.radio, o);
  EXPECT_FALSE(m.at(0, 0).reachable);
  EXPECT_FALSE(m.at(9, 9).rssi[0]);       // (9.5, 9.5): 6.4 m away
  EXPECT_TRUE(m.at(5, 5).rssi[0]);        // (5.5, 5.5)
  std::ostringstream csv;
  write_coverage_csv(m, csv);
  const std::string text = csv.str();
  EXPECT_EQ(text.rfind("x,y,beacon_id,rssi\n", 0), 0u);
  EXPECT_NE(text.find("0.5,0.5,b-stele,unreachable\n"), std::string::npos);
  EXPECT_NE(text.find("9.5,9.5,b-stele,none\n"), std::string::npos);
  EXPECT_THROW(coverage_map(s.floorplan, s.beacons, s.radio, CoverageOptions{0.0}), DomainError);
}

TEST(Coverage, MeanModeConvergesToDeterministic) {
  Scenario s = load_scenario_file(test::data_dir() / "square_room.json");
  s.radio.sigma_slow = 3.0;
  s.radio.sigma_fast = 2.0;
  CoverageOptions det;
  det.resolution = 2.0;
  CoverageOptions mean = det;
  mean.mode = CoverageMode::kMeanOfK;
  mean.samples = 4000;
  const CoverageMap a = coverage_map(s.floorplan, s.beacons, s.radio, det);
  const CoverageMap b = coverage_map(s.floorplan, s.beacons, s.radio, mean);
  const double tol = 4.0 * std::hypot(3.0, 2.0) / std::sqrt(4000.0);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_NEAR(*a.cells[i].rssi[0], *b.cells[i].rssi[0], tol);
  }
}

TEST(Coverage, PgmHeader) {
  const CoverageMap m = square_map(2.5);
  std::ostringstream out;
  write_coverage_pgm(m, 0, RadioParams{}, out);
  const std::string pgm = out.str();
  EXPECT_EQ(pgm.rfind("P5\n4 4\n255\n", 0), 0u);
  EXPECT_EQ(pgm.size(), std::string("P5\n4 4\n255\n").size() + 16);
}

TEST(Simulation, StepBeforeStartIsAContractError) {
  Simulation sim(test::bundled("smoke"));
  EXPECT_THROW(sim.step(command::Idle{}), ContractError);
  sim.start();
  EXPECT_THROW(sim.start(), ContractError);
}

}  // namespace
}  // namespace seamquest
