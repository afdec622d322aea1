#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drums/gassmann.hpp"
#include "drums/unfolding.hpp"

using namespace drums;

namespace {

struct Setup {
  Sl3F2 sl3;
  Subgroup h, k;
  CosetAction ha, ka;

  Setup() : sl3(sl3_f2()) {
    h = sl3.point_stabilizer(0);
    k = sl3.plane_stabilizer(0);
    ha = coset_action(sl3.group, h);
    ka = coset_action(sl3.group, k);
  }
};

Setup& setup() {
  static Setup s;
  return s;
}

// Rigid motion with exact rational entries: rotation from a Pythagorean
// parameterization, optional reflection, then translation.
struct RationalIsometry {
  Rational c, s;  // cos, sin
  bool reflect = false;
  Vec2r shift;

  Vec2r operator()(const Vec2r& p) const {
    Vec2r q = p;
    if (reflect) q.y = -q.y;
    return Vec2r{c * q.x - s * q.y + shift.x, s * q.x + c * q.y + shift.y};
  }

  static RationalIsometry random(std::mt19937& rng) {
    std::uniform_int_distribution<int> mn(1, 12), tr(-20, 20), flip(0, 1);
    int m = mn(rng), n = mn(rng);
    if (m == n) ++m;
    if (m < n) std::swap(m, n);
    long long m2 = m * m, n2 = n * n;
    RationalIsometry iso;
    iso.c = Rational(m2 - n2, m2 + n2);
    iso.s = Rational(2LL * m * n, m2 + n2);
    iso.reflect = flip(rng) == 1;
    iso.shift = Vec2r{Rational(tr(rng), 4), Rational(tr(rng), 4)};
    return iso;
  }
};

BaseTriangle transform(const BaseTriangle& b, const RationalIsometry& iso) {
  return BaseTriangle{{iso(b.v[0]), iso(b.v[1]), iso(b.v[2])}};
}

}  // namespace

TEST_CASE("involutions of SL3(F2) form a single class of size 21") {
  auto& st = setup();
  int count = 0;
  for (int e = 0; e < st.sl3.group.order(); ++e)
    if (e != st.sl3.group.identity_index() &&
        st.sl3.group.mul(e, e) == st.sl3.group.identity_index())
      ++count;
  CHECK(count == 21);  // search space for triples is 21^3

  auto classes = conjugacy_classes(st.sl3.group);
  int order2_classes = 0;
  for (const auto& c : classes.classes)
    if (st.sl3.group.element(c[0]).order() == 2) {
      ++order2_classes;
      CHECK(c.size() == 21);
    }
  CHECK(order2_classes == 1);
}

TEST_CASE("derived diagrams are trees with equal per-color boundary counts") {
  auto& st = setup();
  auto der = derive_diagrams(st.sl3.group, st.ha, st.ka);

  CHECK(der.d1.valid());
  CHECK(der.d2.valid());
  CHECK(der.d1.is_tree());
  CHECK(der.d2.is_tree());
  CHECK(der.d1.matched_edges() == 6);
  CHECK(der.d2.matched_edges() == 6);

  // Fixed-point counts of each involution agree across the two actions, a
  // consequence of the permutation-character equality.
  auto o1 = der.d1.open_counts();
  auto o2 = der.d2.open_counts();
  CHECK(o1 == o2);
  CHECK(o1[0] + o1[1] + o1[2] == 9);  // 3n - 2 * matched

  for (int c = 0; c < 3; ++c) {
    int e = der.involutions[c];
    CHECK(st.sl3.group.mul(e, e) == st.sl3.group.identity_index());
    CHECK(st.ha.fixed_cosets(e) == o1[c]);
    CHECK(st.ka.fixed_cosets(e) == o2[c]);
  }
}

TEST_CASE("single-node diagram unfolds to the base triangle") {
  auto dom = unfold(GluingDiagram::single(), BaseTriangle::right_isosceles(), 0);
  CHECK(dom.nodes() == 1);
  CHECK(dom.area2() == Rational(1));
  for (int c = 0; c < 3; ++c) CHECK(dom.edge[0][c].is_boundary);
  CHECK(check_embedding(dom));
  CHECK(dom.boundary.size() == 3);
}

TEST_CASE("two nodes glued along the hypotenuse unfold to the unit square") {
  GluingDiagram d;
  d.n = 2;
  d.partner[0] = {1, 0};
  d.partner[1] = {-1, -1};
  d.partner[2] = {-1, -1};
  auto dom = unfold(d, BaseTriangle::right_isosceles(), 0);
  CHECK(dom.area2() == Rational(2));
  CHECK_FALSE(dom.edge[0][0].is_boundary);
  CHECK(check_embedding(dom));
  // Mirror image of (0,0),(1,0),(0,1) across the hypotenuse is (1,1).
  CHECK(dom.tri[1][0] == (Vec2r{Rational(1), Rational(1)}));
}

TEST_CASE("canonical drums embed with areas exactly 7/2 each") {
  auto& st = setup();
  auto pair = canonical_drums(st.sl3.group, st.ha, st.ka, BaseTriangle::right_isosceles());

  // The first tree triple unfolds to a mirror-congruent pair, so the
  // canonical search must move past it to the first nonisometric one.
  auto der = derive_diagrams(st.sl3.group, st.ha, st.ka);
  CHECK(der.involutions == std::array<int, 3>{1, 8, 24});
  CHECK(pair.derivation.involutions == std::array<int, 3>{1, 8, 76});
  {
    auto m1 = unfold(der.d1, BaseTriangle::right_isosceles(), 0);
    auto m2 = unfold(der.d2, BaseTriangle::right_isosceles(), 0);
    CHECK(check_embedding(m1));
    CHECK(check_embedding(m2));
    CHECK(boundary_signature(m1) == boundary_signature(m2));  // mirror pair
  }

  CHECK(pair.drum1.embedded);
  CHECK(pair.drum2.embedded);
  CHECK(pair.drum1.area2() == Rational(7));
  CHECK(pair.drum2.area2() == Rational(7));
  CHECK(pair.drum1.boundary.size() == 9);
  CHECK(pair.drum2.boundary.size() == 9);
  CHECK(pair.drum1.boundary_color_counts() == pair.drum2.boundary_color_counts());
}

TEST_CASE("drums are nonisometric: signatures differ") {
  auto& st = setup();
  auto pair = canonical_drums(st.sl3.group, st.ha, st.ka, BaseTriangle::right_isosceles());
  auto s1 = boundary_signature(pair.drum1);
  auto s2 = boundary_signature(pair.drum2);
  CHECK(s1 != s2);
  CHECK(s1.canon.size() == 8);  // maximal sides after collinear merge
  CHECK(s2.canon.size() == 8);

  // A second, scalene base also yields an embeddable nonisometric pair.
  BaseTriangle scalene{{Vec2r{Rational(0), Rational(0)}, Vec2r{Rational(1), Rational(0)},
                        Vec2r{Rational(1, 4), Rational(5, 8)}}};
  auto sp = canonical_drums(st.sl3.group, st.ha, st.ka, scalene);
  CHECK(sp.drum1.area2() == Rational(7) * scalene.area2());
  CHECK(sp.drum2.area2() == Rational(7) * scalene.area2());
  CHECK(boundary_signature(sp.drum1) != boundary_signature(sp.drum2));
}

TEST_CASE("signature and embedding verdicts are isometry invariant") {
  auto& st = setup();
  auto base = BaseTriangle::right_isosceles();
  auto ref = canonical_drums(st.sl3.group, st.ha, st.ka, base);
  auto sig1 = boundary_signature(ref.drum1);

  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    auto iso = RationalIsometry::random(rng);
    auto moved = unfold(ref.derivation.d1, transform(base, iso), 0);
    CHECK(check_embedding(moved));
    CHECK(boundary_signature(moved) == sig1);
  }
}

TEST_CASE("any root yields a congruent domain") {
  auto& st = setup();
  auto pair = canonical_drums(st.sl3.group, st.ha, st.ka, BaseTriangle::right_isosceles());
  auto sig = boundary_signature(pair.drum1);
  for (int root = 1; root < 7; ++root) {
    auto dom = unfold(pair.derivation.d1, BaseTriangle::right_isosceles(), root);
    CHECK(dom.area2() == Rational(7));
    CHECK(check_embedding(dom));
    CHECK(boundary_signature(dom) == sig);
  }
}

TEST_CASE("adversarial fan diagram wraps onto itself and fails embedding") {
  // Path diagram alternating colors 1 and 2: every triangle keeps vertex 0,
  // so the unfolding is a fan around it. An obtuse angle at that vertex makes
  // the fan wrap past a full turn.
  GluingDiagram d;
  d.n = 7;
  d.partner[0].assign(7, -1);
  d.partner[1].assign(7, -1);
  d.partner[2].assign(7, -1);
  for (int x = 0; x + 1 < 7; ++x) {
    int c = (x % 2 == 0) ? 1 : 2;
    d.partner[c][x] = x + 1;
    d.partner[c][x + 1] = x;
  }
  CHECK(d.is_tree());

  BaseTriangle thin{{Vec2r{Rational(0), Rational(0)}, Vec2r{Rational(1), Rational(0)},
                     Vec2r{Rational(-3, 2), Rational(1, 4)}}};
  auto dom = unfold(d, thin, 0);
  CHECK_FALSE(check_embedding(dom));

  // The failing verdict is isometry invariant too (rotation by 3-4-5 angle).
  BaseTriangle thin_rot;
  for (int i = 0; i < 3; ++i)
    thin_rot.v[i] = Vec2r{Rational(3, 5) * thin.v[i].x - Rational(4, 5) * thin.v[i].y,
                          Rational(4, 5) * thin.v[i].x + Rational(3, 5) * thin.v[i].y};
  auto dom_rot = unfold(d, thin_rot, 0);
  CHECK_FALSE(check_embedding(dom_rot));

  // The same diagram with a sharp angle at vertex 0 stays embedded.
  BaseTriangle sharp{{Vec2r{Rational(0), Rational(0)}, Vec2r{Rational(1), Rational(0)},
                      Vec2r{Rational(1), Rational(1, 2)}}};
  auto ok = unfold(d, sharp, 0);
  CHECK(check_embedding(ok));
}

TEST_CASE("svg output: well-formed, 7 polygons, deterministic") {
  auto& st = setup();
  auto pair = canonical_drums(st.sl3.group, st.ha, st.ka, BaseTriangle::right_isosceles());
  std::string svg = to_svg(pair.drum1);
  CHECK(svg.find("<?xml") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  size_t count = 0, pos = 0;
  while ((pos = svg.find("<polygon", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 7);
  CHECK(to_svg(pair.drum1) == svg);  // byte-identical on identical input

  // Minimal well-formedness scan: tags balance and attributes stay quoted.
  int depth = 0;
  bool balanced = true;
  for (size_t i = 0; i < svg.size(); ++i) {
    if (svg[i] != '<') continue;
    size_t end = svg.find('>', i);
    REQUIRE(end != std::string::npos);
    std::string tag = svg.substr(i, end - i + 1);
    CHECK(std::count(tag.begin(), tag.end(), '"') % 2 == 0);
    if (tag.rfind("<?", 0) == 0) continue;
    if (tag.rfind("</", 0) == 0)
      --depth;
    else if (tag[tag.size() - 2] != '/')
      ++depth;
    if (depth < 0) balanced = false;
    i = end;
  }
  CHECK(balanced);
  CHECK(depth == 0);
}

TEST_CASE("domain json records exact coordinates and statuses") {
  auto& st = setup();
  auto pair = canonical_drums(st.sl3.group, st.ha, st.ka, BaseTriangle::right_isosceles());
  auto j = pair.drum1.to_json();
  CHECK(j["triangles"].size() == 7);
  CHECK(j["area"]["exact"] == "7/2");
  CHECK(j["boundary_polygon"].size() == 9);
  CHECK(j["diagram"]["nodes"] == 7);
}
