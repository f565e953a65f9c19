#pragma once

#include <cmath>
#include <vector>

namespace catsurf {

// Plain 2-d vector for straight-line work in a projective chart.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Signed orientation of the triangle (a, b, c); positive = counterclockwise.
inline double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  return cross(b - a, c - a);
}

// Shoelace area, positive for counterclockwise polygons.
inline double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    s += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * s;
}

inline Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
  Vec2 c{0, 0};
  for (const Vec2& p : poly) c = c + p;
  return c * (1.0 / static_cast<double>(poly.size()));
}

// Sutherland-Hodgman clip of a convex polygon against the half planes of a
// convex counterclockwise clip polygon. Result may be empty or degenerate.
std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject,
                              const std::vector<Vec2>& clip);

// Intersection parameter t of segment [a, b] with the line through (p, q),
// or a negative value if parallel.
double segment_line_param(Vec2 a, Vec2 b, Vec2 p, Vec2 q);

}  // namespace catsurf
