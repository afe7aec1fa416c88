#include "seamquest/world.hpp"

#include <algorithm>
#include <limits>

#include "seamquest/error.hpp"

namespace seamquest {

Vec2 CrowdAgent::position_at(double t) const {
  if (waypoints.empty()) return {};
  if (t <= waypoints.front().time) return waypoints.front().position;
  if (t >= waypoints.back().time) return waypoints.back().position;
  const auto next = std::upper_bound(waypoints.begin(), waypoints.end(), t,
                                     [](double v, const Waypoint& w) { return v < w.time; });
  const Waypoint& w1 = *next;
  const Waypoint& w0 = *(next - 1);
  if (t == w0.time) return w0.position;
  const double f = (t - w0.time) / (w1.time - w0.time);
  return w0.position + (w1.position - w0.position) * f;
}

std::vector<CrowdDisk> WorldState::crowd_disks() const {
  std::vector<CrowdDisk> disks;
  disks.reserve(crowd.size());
  for (const auto& agent : crowd) disks.push_back({agent.position_at(time), agent.radius});
  return disks;
}

const Beacon* WorldState::find_beacon(const std::string& id) const {
  for (const auto& beacon : beacons) {
    if (beacon.id == id) return &beacon;
  }
  return nullptr;
}

double free_travel(const Floorplan& floorplan, Vec2 from, Vec2 direction, double wanted) {
  if (wanted <= 0.0) return 0.0;
  const Vec2 to = from + direction * wanted;
  double limit = std::numeric_limits<double>::infinity();

  for (const auto& wall : floorplan.walls) {
    if (auto s = first_contact(from, to, wall.segment.a, wall.segment.b)) {
      limit = std::min(limit, *s * wanted);
    }
  }
  for (const auto& obstacle : floorplan.obstacles) {
    // A single-point graze never enters the interior.
    if (auto inside = clip_to_convex(from, to, obstacle.vertices);
        inside && inside->hi - inside->lo > 1e-12) {
      limit = std::min(limit, inside->lo * wanted);
    }
  }
  const Rect& b = floorplan.bounds;
  if (direction.x > 0) limit = std::min(limit, (b.max.x - from.x) / direction.x);
  if (direction.x < 0) limit = std::min(limit, (b.min.x - from.x) / direction.x);
  if (direction.y > 0) limit = std::min(limit, (b.max.y - from.y) / direction.y);
  if (direction.y < 0) limit = std::min(limit, (b.min.y - from.y) / direction.y);

  if (limit > wanted + kCollisionMargin) return wanted;
  return std::clamp(limit - kCollisionMargin, 0.0, wanted);
}

WorldState advance_to(const WorldState& world, const MoveCommand& cmd, double new_time) {
  WorldState next = world;
  const double dt = new_time - world.time;
  VisitorState& v = next.visitor;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, command::Walk>) {
          const Vec2 dir = heading(c.direction);
          v.facing = dir;
          const double travel = free_travel(world.floorplan, v.position, dir, v.speed * dt);
          if (travel > 0.0) v.position = v.position + dir * travel;
        } else if constexpr (std::is_same_v<T, command::Turn>) {
          v.facing = heading(c.facing);
        } else if constexpr (std::is_same_v<T, command::SetRaised>) {
          v.phone_raised = c.raised;
        }
      },
      cmd);
  next.time = new_time;
  return next;
}

WorldState step(const WorldState& world, const MoveCommand& cmd, double dt) {
  if (!(dt > 0.0)) throw ContractError("step: dt must be positive");
  return advance_to(world, cmd, world.time + dt);
}

}  // namespace seamquest
