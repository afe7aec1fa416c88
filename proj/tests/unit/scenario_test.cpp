#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "paths.hpp"
#include "seamquest/scenario.hpp"

namespace seamquest {
namespace {

using json = nlohmann::json;

json minimal() {
  return json::parse(R"({
    "seed": 1, "duration": 10.0, "tick": 0.1,
    "floorplan": {
      "bounds": {"min": [0, 0], "max": [10, 10]},
      "galleries": [{"id": "g", "min": [0, 0], "max": [10, 10]}],
      "artifacts": [{"id": "a", "position": [5, 5], "gallery": "g"}]
    },
    "beacons": [{"id": "b", "artifact": "a"}],
    "quests": {"ghosts": [{"ghost": "Anubis", "artifact": "a"}],
               "final_ghost": {"ghost": "Hermes", "museum": "Agora"}},
    "visitor": {"position": [1, 1]}
  })");
}

std::vector<ValidationIssue> issues_of(const json& doc) {
  try {
    load_scenario(doc.dump());
  } catch (const ScenarioError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(const json& doc, IssueCategory c, const std::string& path) {
  for (const auto& i : issues_of(doc)) {
    if (i.category == c && i.path == path) return true;
  }
  return false;
}

TEST(LoadScenario, MinimalIsValid) {
  const Scenario s = load_scenario(minimal().dump());
  EXPECT_EQ(s.beacons.size(), 1u);
  EXPECT_EQ(s.beacons[0].position, (Vec2{5, 5}));  // defaults to the artifact position
  EXPECT_EQ(s.quests.quests[0].beacon_id, "b");
  EXPECT_EQ(s.total_ticks(), 100u);
  EXPECT_EQ(s.seed, 1u);
}

TEST(LoadScenario, BundledScenariosValidate) {
  for (const char* name : {"smoke", "shelved_gallery", "crowd_blockage"}) {
    EXPECT_NO_THROW(test::bundled(name)) << name;
  }
}

TEST(LoadScenario, MissingArtifactNamesTheBeacon) {
  json d = minimal();
  d["beacons"][0]["artifact"] = "nope";
  const auto issues = issues_of(d);
  ASSERT_FALSE(issues.empty());
  bool named = false;
  for (const auto& i : issues) {
    named = named || (i.category == IssueCategory::kReference && i.path == "beacons[0].artifact" &&
                      i.message.find("'b'") != std::string::npos);
  }
  EXPECT_TRUE(named);
}

TEST(LoadScenario, DegeneratePolygon) {
  json d = minimal();
  d["floorplan"]["obstacles"] = json::array({{{"id", "s"}, {"label", "shelf"}, {"attenuation_db", 5},
                                              {"vertices", {{1, 1}, {2, 2}}}}});
  EXPECT_TRUE(has_issue(d, IssueCategory::kGeometry, "floorplan.obstacles[0].vertices"));
}

TEST(LoadScenario, OutOfBoundsGeometry) {
  json d = minimal();
  d["floorplan"]["artifacts"][0]["position"] = {11, 5};
  d["visitor"]["position"] = {-1, 1};
  EXPECT_TRUE(has_issue(d, IssueCategory::kGeometry, "floorplan.artifacts[0].position"));
  EXPECT_TRUE(has_issue(d, IssueCategory::kGeometry, "visitor.position"));
}

TEST(LoadScenario, SchemaErrorsCarryPaths) {
  json d = minimal();
  d["radio"] = {{"p_ref", "loud"}};
  d["sensing"] = {{"method", "kalman"}};
  d["mystery"] = 1;
  EXPECT_TRUE(has_issue(d, IssueCategory::kSchema, "radio.p_ref"));
  EXPECT_TRUE(has_issue(d, IssueCategory::kSchema, "sensing.method"));
  EXPECT_TRUE(has_issue(d, IssueCategory::kSchema, "mystery"));
}

TEST(LoadScenario, ValueErrors) {
  json d = minimal();
  d["tick"] = 0.0;
  EXPECT_TRUE(has_issue(d, IssueCategory::kValue, "tick"));
  d = minimal();
  d["duration"] = 10.05;
  EXPECT_TRUE(has_issue(d, IssueCategory::kValue, "duration"));
  d = minimal();
  d["seed"] = -4;
  EXPECT_TRUE(has_issue(d, IssueCategory::kSchema, "seed"));
  d = minimal();
  d["crowd"] = json::array({{{"id", "c"}, {"waypoints", {{{"t", 2}, {"position", {1, 1}}},
                                                          {{"t", 1}, {"position", {2, 2}}}}}}});
  EXPECT_FALSE(issues_of(d).empty());
}

TEST(LoadScenario, DuplicateIdsAndDisabledQuestBeacon) {
  json d = minimal();
  d["beacons"].push_back({{"id", "b"}, {"artifact", "a"}});
  EXPECT_TRUE(has_issue(d, IssueCategory::kReference, "beacons[1]"));
  d = minimal();
  d["beacons"][0]["enabled"] = false;
  EXPECT_FALSE(issues_of(d).empty());
}

TEST(LoadScenario, ReportsEveryIssueAtOnce) {
  json d = minimal();
  d["tick"] = -1;
  d["beacons"][0]["artifact"] = "nope";
  d["floorplan"]["galleries"][0]["max"] = {20, 10};
  EXPECT_GE(issues_of(d).size(), 3u);
}

TEST(LoadScenario, MalformedJson) {
  EXPECT_THROW(load_scenario("{ not json"), ScenarioError);
  EXPECT_THROW(load_scenario("[]"), ScenarioError);
}

TEST(VisitorScript, EntriesApplyToStepsStartingAtOrAfterTheirTime) {
  json d = minimal();
  d["duration"] = 1.0;
  d["visitor_script"] = json::array({
      {{"t", 0.2}, {"cmd", "walk"}, {"direction", 0.0}, {"duration", 0.3}},
      {{"t", 0.35}, {"cmd", "turn"}, {"facing", 1.0}},
      {{"t", 0.7}, {"cmd", "raise"}, {"raised", true}},
  });
  const auto cmds = expand_visitor_script(load_scenario(d.dump()));
  ASSERT_EQ(cmds.size(), 10u);
  // step k (1-based) starts at (k - 1) * 0.1
  EXPECT_TRUE(std::holds_alternative<command::Idle>(cmds[1]));
  EXPECT_EQ(cmds[2], MoveCommand(command::Walk{0.0}));   // starts at 0.2
  EXPECT_EQ(cmds[3], MoveCommand(command::Walk{0.0}));   // 0.3
  EXPECT_EQ(cmds[4], MoveCommand(command::Turn{1.0}));   // 0.4: later entry wins
  EXPECT_TRUE(std::holds_alternative<command::Idle>(cmds[5]));  // 0.5 is past the walk window
  EXPECT_EQ(cmds[7], MoveCommand(command::SetRaised{true}));
  EXPECT_TRUE(std::holds_alternative<command::Idle>(cmds[8]));
}

}  // namespace
}  // namespace seamquest
