#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace seamquest {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Unit vector at `radians` from the +x axis.
inline Vec2 heading(double radians) { return {std::cos(radians), std::sin(radians)}; }

struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Axis-aligned rectangle; containment is inclusive of the boundary.
struct Rect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  bool contains(const Rect& r) const { return contains(r.min) && contains(r.max); }
};

/// Closed parameter interval [lo, hi] along a segment a + s (b - a).
struct ParamInterval {
  double lo;
  double hi;
};

double signed_area(std::span<const Vec2> polygon);

/// True when the polygon has at least three vertices, non-zero area and
/// every turn has the same sign (collinear vertices are tolerated).
bool is_convex(std::span<const Vec2> polygon);

/// Clips the closed segment [a, b] against a closed convex polygon of either
/// winding. Returns the parameter interval inside the polygon, if any.
std::optional<ParamInterval> clip_to_convex(Vec2 a, Vec2 b, std::span<const Vec2> polygon);

/// Open segment (a, b) against closed segment [c, d]. Touching counts.
bool open_segment_hits_segment(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Open segment (a, b) against a closed convex polygon. Grazing a vertex counts.
bool open_segment_hits_polygon(Vec2 a, Vec2 b, std::span<const Vec2> polygon);

/// First parameter s in [0, 1] where the closed segment [a, b] meets [c, d].
std::optional<double> first_contact(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Closed segment [a, b] against a closed disk.
bool segment_hits_disk(Vec2 a, Vec2 b, Vec2 center, double radius);

/// Strict interior test for a convex polygon of either winding.
bool inside_convex(Vec2 p, std::span<const Vec2> polygon);

}  // namespace seamquest
