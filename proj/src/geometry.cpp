#include "drums/geometry.hpp"

namespace drums {

std::vector<Vec2r> clip_halfplane(const std::vector<Vec2r>& poly, const Vec2r& a,
                                  const Vec2r& b) {
  std::vector<Vec2r> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2r& p = poly[i];
    const Vec2r& q = poly[(i + 1) % n];
    const int sp = orient(a, b, p).sign();
    const int sq = orient(a, b, q).sign();
    if (sp >= 0) out.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      // Proper crossing: intersect segment pq with line ab.
      Rational t = orient(a, b, p) / (orient(a, b, p) - orient(a, b, q));
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

bool triangle_interiors_overlap(const std::array<Vec2r, 3>& t1,
                                const std::array<Vec2r, 3>& t2) {
  auto ccw = [](const std::array<Vec2r, 3>& t) {
    std::vector<Vec2r> v(t.begin(), t.end());
    if (orient(t[0], t[1], t[2]).sign() < 0) std::swap(v[1], v[2]);
    return v;
  };
  std::vector<Vec2r> poly = ccw(t1);
  std::vector<Vec2r> clip = ccw(t2);
  for (size_t i = 0; i < 3 && !poly.empty(); ++i)
    poly = clip_halfplane(poly, clip[i], clip[(i + 1) % 3]);
  if (poly.size() < 3) return false;
  return !polygon_area2(poly).is_zero();
}

bool strictly_inside_polygon(const std::vector<Vec2r>& poly, const Vec2r& p) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (on_segment(p, poly[i], poly[(i + 1) % n])) return false;
  // Crossing number with the half-open rule on a rightward ray.
  bool inside = false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2r& a = poly[i];
    const Vec2r& b = poly[(i + 1) % n];
    const bool a_below = a.y <= p.y;
    const bool b_below = b.y <= p.y;
    if (a_below == b_below) continue;
    // Edge straddles the horizontal line through p; the crossing lies to the
    // right of p iff p is left of an upward edge (right of a downward one).
    int side = orient(a, b, p).sign();
    if (b.y < a.y) side = -side;
    if (side > 0) inside = !inside;
  }
  return inside;
}

}  // namespace drums
