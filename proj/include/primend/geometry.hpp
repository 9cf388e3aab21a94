#pragma once

// Plane points and the segment predicates used by domain validation.

#include <algorithm>
#include <cmath>

namespace primend {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Coordinates are compared with an absolute tolerance; fixtures use
/// coordinates of order 1..100.
inline constexpr double kGeomTol = 1e-9;

inline bool near(Vec2 a, Vec2 b, double tol = kGeomTol) { return distance(a, b) <= tol; }

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
inline int orient(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a) * norm(c - a)});
  if (std::fabs(v) <= kGeomTol * scale) return 0;
  return v > 0 ? 1 : -1;
}

/// p lies on the closed segment [a, b].
inline bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) - kGeomTol <= p.x && p.x <= std::max(a.x, b.x) + kGeomTol &&
         std::min(a.y, b.y) - kGeomTol <= p.y && p.y <= std::max(a.y, b.y) + kGeomTol;
}

/// Closed segments [a, b] and [c, d] share at least one point.
inline bool segments_meet(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

/// Closed segments sharing the endpoint `shared` meet somewhere else too
/// (overlap along a common line).
inline bool segments_overlap_beyond(Vec2 shared, Vec2 b, Vec2 d) {
  if (orient(shared, b, d) != 0) return false;
  return dot(b - shared, d - shared) > 0;
}

/// Twice the signed area; positive for counterclockwise polygons.
template <class Points>
double signed_area2(const Points& pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return s;
}

/// Strictly inside a simple polygon (false on the boundary).
template <class Points>
bool strictly_inside(Vec2 p, const Points& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(p, poly[i], poly[(i + 1) % n])) return false;
  bool in = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) in = !in;
    }
  }
  return in;
}

}  // namespace primend
