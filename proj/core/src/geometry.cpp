#include "seamquest/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace seamquest {
namespace {

// Parameter tolerance along a segment, and an area tolerance (m^2) for
// half-plane tests. Both keep tangencies on the inclusive side.
constexpr double kParamEps = 1e-12;
constexpr double kAreaEps = 1e-9;

}  // namespace

double signed_area(std::span<const Vec2> polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2 p = polygon[i];
    const Vec2 q = polygon[(i + 1) % polygon.size()];
    twice += cross(p, q);
  }
  return 0.5 * twice;
}

bool is_convex(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  const double area = signed_area(polygon);
  if (std::abs(area) <= kAreaEps) return false;
  const double sign = area > 0 ? 1.0 : -1.0;
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = polygon[(i + 1) % n] - polygon[i];
    const Vec2 e1 = polygon[(i + 2) % n] - polygon[(i + 1) % n];
    if (norm(e0) == 0.0) return false;
    const double c = sign * cross(e0, e1);
    if (c < -kAreaEps) return false;
    turning += std::atan2(c, dot(e0, e1));
  }
  // A star polygon turns the same way everywhere but winds more than once.
  return std::abs(turning - 2.0 * std::numbers::pi) < 1e-6;
}

std::optional<ParamInterval> clip_to_convex(Vec2 a, Vec2 b, std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return std::nullopt;
  const double sign = signed_area(polygon) > 0 ? 1.0 : -1.0;
  const Vec2 dir = b - a;
  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v = polygon[i];
    const Vec2 edge = polygon[(i + 1) % n] - v;
    // Inside half-plane: num + s * den >= 0.
    const double num = sign * cross(edge, a - v);
    const double den = sign * cross(edge, dir);
    if (std::abs(den) <= kParamEps * norm(edge) * norm(dir)) {
      if (num < -kAreaEps) return std::nullopt;
      continue;
    }
    const double s = -num / den;
    if (den > 0) {
      lo = std::max(lo, s);
    } else {
      hi = std::min(hi, s);
    }
    if (lo > hi + kParamEps) return std::nullopt;
  }
  return ParamInterval{lo, std::max(lo, hi)};
}

bool open_segment_hits_segment(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Vec2 r = b - a;
  const Vec2 q = d - c;
  const Vec2 w = c - a;
  const double den = cross(r, q);
  if (std::abs(den) > kParamEps * norm(r) * norm(q)) {
    const double s = cross(w, q) / den;
    const double u = cross(w, r) / den;
    return s > kParamEps && s < 1.0 - kParamEps && u >= -kParamEps && u <= 1.0 + kParamEps;
  }
  const double rr = dot(r, r);
  if (rr == 0.0) return false;
  if (std::abs(cross(w, r)) > kAreaEps * std::sqrt(rr)) return false;
  const double s0 = dot(c - a, r) / rr;
  const double s1 = dot(d - a, r) / rr;
  return std::max(s0, s1) > kParamEps && std::min(s0, s1) < 1.0 - kParamEps;
}

bool open_segment_hits_polygon(Vec2 a, Vec2 b, std::span<const Vec2> polygon) {
  const auto inside = clip_to_convex(a, b, polygon);
  return inside && inside->hi > kParamEps && inside->lo < 1.0 - kParamEps;
}

std::optional<double> first_contact(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Vec2 r = b - a;
  const Vec2 q = d - c;
  const Vec2 w = c - a;
  const double den = cross(r, q);
  if (std::abs(den) > kParamEps * norm(r) * norm(q)) {
    const double s = cross(w, q) / den;
    const double u = cross(w, r) / den;
    if (s < -kParamEps || s > 1.0 + kParamEps || u < -kParamEps || u > 1.0 + kParamEps) {
      return std::nullopt;
    }
    return std::clamp(s, 0.0, 1.0);
  }
  const double rr = dot(r, r);
  if (rr == 0.0) return std::nullopt;
  if (std::abs(cross(w, r)) > kAreaEps * std::sqrt(rr)) return std::nullopt;
  const double s0 = dot(c - a, r) / rr;
  const double s1 = dot(d - a, r) / rr;
  const double lo = std::max(std::min(s0, s1), 0.0);
  const double hi = std::min(std::max(s0, s1), 1.0);
  if (lo > hi) return std::nullopt;
  return lo;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * s);
}

bool segment_hits_disk(Vec2 a, Vec2 b, Vec2 center, double radius) {
  return point_segment_distance(center, a, b) <= radius;
}

bool inside_convex(Vec2 p, std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  const double sign = signed_area(polygon) > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v = polygon[i];
    const Vec2 edge = polygon[(i + 1) % n] - v;
    if (sign * cross(edge, p - v) <= kAreaEps) return false;
  }
  return true;
}

}  // namespace seamquest
