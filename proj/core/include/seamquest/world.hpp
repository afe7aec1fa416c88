#pragma once

#include <string>
#include <variant>
#include <vector>

#include "seamquest/floorplan.hpp"
#include "seamquest/geometry.hpp"

namespace seamquest {

/// BLE beacon attached to its home artifact.
struct Beacon {
  std::string id;
  std::string artifact_id;
  Vec2 position;
  bool enabled{true};
};

struct VisitorState {
  Vec2 position;
  Vec2 facing{1.0, 0.0};
  bool phone_raised{false};
  double speed{1.2};  // m/s
};

struct Waypoint {
  double time;
  Vec2 position;
};

/// Scripted museum visitor; a disk that moves along linear waypoint legs.
struct CrowdAgent {
  std::string id;
  std::vector<Waypoint> waypoints;
  double radius{0.3};

  /// Linear interpolation; holds the first/last waypoint outside the script.
  Vec2 position_at(double t) const;
};

struct CrowdDisk {
  Vec2 center;
  double radius;
};

namespace command {
struct Walk {
  double direction;  // radians
  bool operator==(const Walk&) const = default;
};
struct Turn {
  double facing;  // radians
  bool operator==(const Turn&) const = default;
};
struct SetRaised {
  bool raised;
  bool operator==(const SetRaised&) const = default;
};
struct Idle {
  bool operator==(const Idle&) const = default;
};
}  // namespace command

using MoveCommand = std::variant<command::Idle, command::Walk, command::Turn, command::SetRaised>;

struct WorldState {
  Floorplan floorplan;
  std::vector<Beacon> beacons;
  VisitorState visitor;
  std::vector<CrowdAgent> crowd;
  double time{0.0};

  std::vector<CrowdDisk> crowd_disks() const;
  const Beacon* find_beacon(const std::string& id) const;
};

/// Gap kept between the visitor and any boundary it walks into.
inline constexpr double kCollisionMargin = 1e-3;

/// Applies `cmd` and moves the world to `new_time`. Walking also turns the
/// visitor to face the walking direction; motion stops short of the first
/// wall, obstacle or room edge on the path (no sliding).
WorldState advance_to(const WorldState& world, const MoveCommand& cmd, double new_time);

/// advance_to(world, cmd, world.time + dt). dt must be positive.
WorldState step(const WorldState& world, const MoveCommand& cmd, double dt);

/// Distance the visitor can travel from `from` along unit `direction`
/// before hitting geometry, capped at `wanted`.
double free_travel(const Floorplan& floorplan, Vec2 from, Vec2 direction, double wanted);

}  // namespace seamquest
