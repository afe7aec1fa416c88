#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seamquest/game.hpp"
#include "seamquest/radio.hpp"
#include "seamquest/sensing.hpp"
#include "seamquest/world.hpp"

namespace seamquest {

/// Timed visitor command. Without a duration it applies to the single tick
/// starting at or after `time`; with one it repeats on every tick starting in
/// [time, time + duration). Later entries win when several apply to a tick.
struct ScriptedCommand {
  double time{0.0};
  MoveCommand command;
  std::optional<double> duration;
};

struct Scenario {
  std::string name;
  Floorplan floorplan;
  std::vector<Beacon> beacons;
  RadioParams radio;
  SmoothingConfig sensing;
  QuestScript quests;
  VisitorState visitor;
  std::vector<ScriptedCommand> visitor_script;
  std::vector<CrowdAgent> crowd;
  std::uint64_t seed{0};
  double duration{0.0};
  double tick{0.1};

  /// Number of simulation steps; duration is a whole number of ticks.
  std::size_t total_ticks() const;
  WorldState initial_world() const;
};

enum class IssueCategory { kSchema, kReference, kGeometry, kValue };
std::string_view to_string(IssueCategory category);

struct ValidationIssue {
  IssueCategory category;
  std::string path;  ///< e.g. "floorplan.obstacles[1].vertices"
  std::string message;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Parses and fully validates a scenario document. Every problem found is
/// reported at once in a ScenarioError.
Scenario load_scenario(std::string_view document);

/// Reads `path` and calls load_scenario. Unreadable files throw std::runtime_error.
Scenario load_scenario_file(const std::filesystem::path& path);

/// Per-step commands: entry k is the command applied on the step that starts
/// at (k * tick). Steps without a scripted command are Idle.
std::vector<MoveCommand> expand_visitor_script(const Scenario& scenario);

}  // namespace seamquest
