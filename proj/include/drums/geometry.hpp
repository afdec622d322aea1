#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "drums/rational.hpp"

namespace drums {

/// Point/vector in the plane with exact rational coordinates.
struct Vec2r {
  Rational x, y;

  friend Vec2r operator+(const Vec2r& a, const Vec2r& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2r operator-(const Vec2r& a, const Vec2r& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2r operator*(const Rational& s, const Vec2r& v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2r& a, const Vec2r& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2r& a, const Vec2r& b) { return !(a == b); }

  std::array<double, 2> to_double() const { return {x.to_double(), y.to_double()}; }
};

struct Vec2rHash {
  size_t operator()(const Vec2r& v) const noexcept {
    size_t h = std::hash<Rational>()(v.x);
    h ^= std::hash<Rational>()(v.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

inline Rational dot(const Vec2r& a, const Vec2r& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Vec2r& a, const Vec2r& b) { return a.x * b.y - a.y * b.x; }
inline Rational norm2(const Vec2r& a) { return dot(a, a); }

/// Twice the signed area of triangle (o, a, b); > 0 for counterclockwise.
inline Rational orient(const Vec2r& o, const Vec2r& a, const Vec2r& b) {
  return cross(a - o, b - o);
}

/// Mirror image of p across the line through a and b.
inline Vec2r reflect(const Vec2r& p, const Vec2r& a, const Vec2r& b) {
  Vec2r d = b - a;
  Rational t = dot(p - a, d) / norm2(d);
  Vec2r proj = a + t * d;
  return proj + (proj - p);
}

/// True iff p lies on the closed segment [a, b].
inline bool on_segment(const Vec2r& p, const Vec2r& a, const Vec2r& b) {
  if (!orient(a, b, p).is_zero()) return false;
  return dot(p - a, p - b).sign() <= 0;
}

/// Twice the signed area of a polygon (shoelace).
inline Rational polygon_area2(const std::vector<Vec2r>& pts) {
  Rational s(0);
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec2r& a = pts[i];
    const Vec2r& b = pts[(i + 1) % pts.size()];
    s += cross(a, b);
  }
  return s;
}

/// Sutherland-Hodgman clip of a convex polygon against the half-plane on the
/// left of directed line (a, b); boundary points are kept.
std::vector<Vec2r> clip_halfplane(const std::vector<Vec2r>& poly, const Vec2r& a,
                                  const Vec2r& b);

/// Exact test: do the open interiors of two triangles intersect?
bool triangle_interiors_overlap(const std::array<Vec2r, 3>& t1,
                                const std::array<Vec2r, 3>& t2);

/// Exact point-in-polygon test for a simple polygon; points on the boundary
/// are not "strictly inside".
bool strictly_inside_polygon(const std::vector<Vec2r>& poly, const Vec2r& p);

}  // namespace drums
