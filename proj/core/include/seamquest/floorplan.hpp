#pragma once

#include <string>
#include <vector>

#include "seamquest/geometry.hpp"

namespace seamquest {

struct Wall {
  std::string id;
  Segment segment;
  double attenuation_db{0.0};
};

/// Convex static obstacle such as a shelf or display case.
struct Obstacle {
  std::string id;
  std::string label;
  std::vector<Vec2> vertices;
  double attenuation_db{0.0};
};

struct Gallery {
  std::string id;
  Rect region;
};

struct Artifact {
  std::string id;
  Vec2 position;
  std::string gallery_id;
};

struct Floorplan {
  Rect bounds;
  std::vector<Wall> walls;
  std::vector<Obstacle> obstacles;
  std::vector<Gallery> galleries;
  std::vector<Artifact> artifacts;

  const Artifact* find_artifact(const std::string& id) const;
  /// First gallery (declaration order) containing p, or nullptr.
  const Gallery* gallery_at(Vec2 p) const;
  /// True when p lies strictly inside any obstacle.
  bool inside_obstacle(Vec2 p) const;
};

struct Crossing {
  enum class Kind { kWall, kObstacle };
  Kind kind;
  std::size_t index;

  bool operator==(const Crossing&) const = default;
  auto operator<=>(const Crossing&) const = default;
};

/// Every wall and obstacle whose closed geometry meets the open segment
/// (a, b), each listed once: walls first, then obstacles, in floorplan order.
std::vector<Crossing> line_of_sight(Vec2 a, Vec2 b, const Floorplan& floorplan);

/// Sum of the per-wall and per-obstacle attenuation along (a, b).
double static_attenuation(Vec2 a, Vec2 b, const Floorplan& floorplan);

}  // namespace seamquest
