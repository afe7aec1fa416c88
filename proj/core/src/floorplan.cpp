#include "seamquest/floorplan.hpp"

namespace seamquest {

const Artifact* Floorplan::find_artifact(const std::string& id) const {
  for (const auto& artifact : artifacts) {
    if (artifact.id == id) return &artifact;
  }
  return nullptr;
}

const Gallery* Floorplan::gallery_at(Vec2 p) const {
  for (const auto& gallery : galleries) {
    if (gallery.region.contains(p)) return &gallery;
  }
  return nullptr;
}

bool Floorplan::inside_obstacle(Vec2 p) const {
  for (const auto& obstacle : obstacles) {
    if (inside_convex(p, obstacle.vertices)) return true;
  }
  return false;
}

std::vector<Crossing> line_of_sight(Vec2 a, Vec2 b, const Floorplan& floorplan) {
  std::vector<Crossing> crossed;
  for (std::size_t i = 0; i < floorplan.walls.size(); ++i) {
    const Segment& s = floorplan.walls[i].segment;
    if (open_segment_hits_segment(a, b, s.a, s.b)) {
      crossed.push_back({Crossing::Kind::kWall, i});
    }
  }
  for (std::size_t i = 0; i < floorplan.obstacles.size(); ++i) {
    if (open_segment_hits_polygon(a, b, floorplan.obstacles[i].vertices)) {
      crossed.push_back({Crossing::Kind::kObstacle, i});
    }
  }
  return crossed;
}

double static_attenuation(Vec2 a, Vec2 b, const Floorplan& floorplan) {
  double total = 0.0;
  for (const Crossing& c : line_of_sight(a, b, floorplan)) {
    total += c.kind == Crossing::Kind::kWall ? floorplan.walls[c.index].attenuation_db
                                             : floorplan.obstacles[c.index].attenuation_db;
  }
  return total;
}

}  // namespace seamquest
