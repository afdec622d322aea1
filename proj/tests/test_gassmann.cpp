#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "drums/gassmann.hpp"

using namespace drums;

namespace {

// Brute-force oracle: enumerate all 512 binary 3x3 matrices and count the
// invertible ones, acting on nonzero vectors directly.
int count_invertible_3x3_f2() {
  int count = 0;
  for (int m = 0; m < 512; ++m) {
    uint8_t c0 = m & 7, c1 = (m >> 3) & 7, c2 = (m >> 6) & 7;
    if (!c0 || !c1 || !c2 || c0 == c1 || c0 == c2 || c1 == c2) continue;
    if ((c0 ^ c1) == c2) continue;
    ++count;
  }
  return count;
}

PermGroup s4() {
  return PermGroup::closure({Perm({1, 0, 2, 3}), Perm({1, 2, 3, 0})});
}

PermGroup d6() {  // dihedral group of the hexagon, order 12
  return PermGroup::closure({Perm({1, 2, 3, 4, 5, 0}), Perm({0, 5, 4, 3, 2, 1})});
}

// All subgroups generated by at most two elements (every subgroup of the
// small groups used here is 2-generated).
std::vector<Subgroup> two_generated_subgroups(const PermGroup& g) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b) {
      Subgroup s = Subgroup::generated(g, {a, b});
      if (seen.insert(s.members()).second) out.push_back(s);
    }
  return out;
}

bool permutation_characters_equal(const PermGroup& g, const Subgroup& h,
                                  const Subgroup& k) {
  if (g.order() % h.order() != 0 || h.order() != k.order()) return false;
  auto ha = coset_action(g, h);
  auto ka = coset_action(g, k);
  for (int e = 0; e < g.order(); ++e)
    if (ha.fixed_cosets(e) != ka.fixed_cosets(e)) return false;
  return true;
}

}  // namespace

TEST_CASE("group order equals brute-force matrix count (8-1)(8-2)(8-4)") {
  CHECK(count_invertible_3x3_f2() == (8 - 1) * (8 - 2) * (8 - 4));
  auto sl3 = sl3_f2();
  CHECK(sl3.group.order() == 168);
  CHECK(5040 % sl3.group.order() == 0);  // divides degree!
}

TEST_CASE("identity fixes all points, generators act transitively") {
  auto sl3 = sl3_f2();
  CHECK(sl3.group.element(sl3.group.identity_index()).is_identity());

  // Orbit closure by breadth-first expansion from point 0.
  std::set<int> orbit = {0};
  std::vector<int> frontier = {0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int p : frontier)
      for (const Perm& g : sl3.group.generators()) {
        if (orbit.insert(g(p)).second) next.push_back(g(p));
      }
    frontier = std::move(next);
  }
  CHECK(orbit.size() == 7);
}

TEST_CASE("group axioms hold on the enumerated closure") {
  auto sl3 = sl3_f2();
  const auto& g = sl3.group;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, g.order() - 1);
  for (int i = 0; i < 200; ++i) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    CHECK(g.mul(a, g.inv(a)) == g.identity_index());
    CHECK(g.mul(g.identity_index(), a) == a);
  }
}

TEST_CASE("conjugacy classes of SL3(F2): brute-force oracle and size multiset") {
  auto sl3 = sl3_f2();
  const auto& g = sl3.group;
  auto classes = conjugacy_classes(g);

  // Independent oracle: pairwise conjugation over all 168 elements.
  std::vector<int> oracle_class(g.order(), -1);
  int nclasses = 0;
  for (int x = 0; x < g.order(); ++x) {
    if (oracle_class[x] >= 0) continue;
    for (int e = 0; e < g.order(); ++e) {
      int y = g.index_of(g.element(e).inverse().then(g.element(x)).then(g.element(e)));
      oracle_class[y] = nclasses;
    }
    ++nclasses;
  }
  CHECK(nclasses == 6);
  CHECK(classes.classes.size() == 6);
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      if (oracle_class[x] == oracle_class[y])
        CHECK(classes.class_of[x] == classes.class_of[y]);

  std::multiset<int> sizes;
  int total = 0;
  for (const auto& c : classes.classes) {
    sizes.insert((int)c.size());
    total += (int)c.size();
    CHECK(g.order() % (int)c.size() == 0);
  }
  CHECK(total == g.order());
  CHECK(sizes == std::multiset<int>({1, 21, 42, 56, 24, 24}));

  // Identity sits in a singleton class.
  CHECK(classes.classes[classes.class_of[g.identity_index()]].size() == 1);
}

TEST_CASE("point and plane stabilizers form a Gassmann pair") {
  auto sl3 = sl3_f2();
  const auto& g = sl3.group;
  Subgroup h = sl3.point_stabilizer(0);
  Subgroup k = sl3.plane_stabilizer(0);
  CHECK(h.order() == 24);
  CHECK(k.order() == 24);
  CHECK(h.is_closed());
  CHECK(k.is_closed());

  auto classes = conjugacy_classes(g);
  CHECK(is_almost_conjugate(g, h, k, classes));
  CHECK_FALSE(is_conjugate(g, h, k));

  // Trivial cases.
  CHECK(is_almost_conjugate(g, h, h, classes));
  CHECK(is_conjugate(g, h, h));

  // Conjugated copy of h.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, g.order() - 1);
  for (int trial = 0; trial < 5; ++trial) {
    int e = pick(rng);
    std::vector<int> conj_members;
    for (int m : h.members()) conj_members.push_back(g.conj(m, e));
    Subgroup hc(&g, std::move(conj_members));
    CHECK(is_almost_conjugate(g, h, hc, classes));
    CHECK(is_conjugate(g, h, hc));
  }
}

TEST_CASE("coset actions: index, identity, permutation characters") {
  auto sl3 = sl3_f2();
  const auto& g = sl3.group;
  Subgroup h = sl3.point_stabilizer(0);
  Subgroup k = sl3.plane_stabilizer(0);
  auto ha = coset_action(g, h);
  auto ka = coset_action(g, k);
  CHECK(ha.index == 7);
  CHECK(ka.index == 7);
  CHECK(ha.fixed_cosets(g.identity_index()) == 7);

  // Homomorphism spot-check.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, g.order() - 1);
  for (int i = 0; i < 100; ++i) {
    int a = pick(rng), b = pick(rng);
    CHECK(ha.perm(g.mul(a, b)) == ha.perm(a).then(ha.perm(b)));
  }

  // Transitivity of the action.
  std::set<int> orbit;
  for (int e = 0; e < g.order(); ++e) orbit.insert(ha.perm(e)(0));
  CHECK(orbit.size() == 7);

  // Permutation-character equality across the pair, per element.
  for (int e = 0; e < g.order(); ++e)
    CHECK(ha.fixed_cosets(e) == ka.fixed_cosets(e));
}

TEST_CASE("the plane action is the incidence-preserving companion action") {
  auto sl3 = sl3_f2();
  for (int e = 0; e < sl3.group.order(); ++e) {
    const Perm& pts = sl3.group.element(e);
    const Perm& pls = sl3.plane_perms[e];
    for (int v = 0; v < 7; ++v)
      for (int p = 0; p < 7; ++p)
        CHECK(Sl3F2::incident(v, p) == Sl3F2::incident(pts(v), pls(p)));
  }
  // Composition stays aligned between the two actions.
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(0, sl3.group.order() - 1);
  for (int i = 0; i < 50; ++i) {
    int a = pick(rng), b = pick(rng);
    int ab = sl3.group.mul(a, b);
    CHECK(sl3.plane_perms[ab] == sl3.plane_perms[a].then(sl3.plane_perms[b]));
  }
}

namespace {

// Seeded random permutation groups of small degree, order capped.
std::vector<PermGroup> random_small_groups(int count, int max_order) {
  std::mt19937 rng(4242);
  std::vector<PermGroup> out;
  while ((int)out.size() < count) {
    int degree = 4 + (int)(rng() % 3);
    auto random_perm = [&] {
      std::vector<int> img(degree);
      for (int i = 0; i < degree; ++i) img[i] = i;
      std::shuffle(img.begin(), img.end(), rng);
      return Perm(img);
    };
    PermGroup g = PermGroup::closure({random_perm(), random_perm()});
    if (g.order() <= max_order && g.order() > 2) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("class-count criterion is equivalent to permutation-character equality") {
  auto sl3 = sl3_f2();
  Subgroup h = sl3.point_stabilizer(0);
  Subgroup k = sl3.plane_stabilizer(0);
  CHECK(is_almost_conjugate(sl3.group, h, k) ==
        permutation_characters_equal(sl3.group, h, k));

  std::vector<PermGroup> groups = {s4(), d6()};
  for (auto& g : random_small_groups(5, 120)) groups.push_back(std::move(g));
  for (const PermGroup& g : groups) {
    auto subs = two_generated_subgroups(g);
    auto classes = conjugacy_classes(g);
    for (const auto& a : subs)
      for (const auto& b : subs) {
        if (a.order() != b.order()) continue;
        CHECK(is_almost_conjugate(g, a, b, classes) ==
              permutation_characters_equal(g, a, b));
      }
  }
}

TEST_CASE("conjugate implies almost conjugate on subgroup pairs of small groups") {
  for (const PermGroup& g : {s4(), d6()}) {
    auto subs = two_generated_subgroups(g);
    auto classes = conjugacy_classes(g);
    for (const auto& a : subs)
      for (const auto& b : subs) {
        if (a.order() != b.order()) continue;
        if (is_conjugate(g, a, b)) CHECK(is_almost_conjugate(g, a, b, classes));
      }
  }
}

TEST_CASE("intertwiner: exact equivariance, invariant vector, normalization") {
  auto sl3 = sl3_f2();
  const auto& g = sl3.group;
  Subgroup h = sl3.point_stabilizer(0);
  Subgroup k = sl3.plane_stabilizer(0);
  auto ha = coset_action(g, h);
  auto ka = coset_action(g, k);

  auto tw = intertwiner(g, ha, ka);
  CHECK(tw.t.is_invertible());
  CHECK(verify_intertwiner(g, ha, ka, tw.t));

  // The all-ones vector maps to a scalar multiple of the all-ones vector.
  std::vector<Rational> ones(7, Rational(1));
  auto img = tw.t.apply(ones);
  for (int i = 1; i < 7; ++i) CHECK(img[i] == img[0]);
  CHECK_FALSE(img[0].is_zero());

  // Exact unitary rescaling in a quadratic extension.
  CHECK(tw.normalized.exact);
  CHECK((tw.normalized.u * tw.normalized.u.transpose()).is_identity());

  // H = K admits the identity matrix, which is unitary with radicand 1.
  auto tw_hh = intertwiner(g, ha, ha);
  CHECK(tw_hh.t.is_invertible());
  CHECK(verify_intertwiner(g, ha, ha, tw_hh.t));
  CHECK(tw_hh.normalized.exact);
  CHECK(tw_hh.normalized.radicand == 1);
}

TEST_CASE("gassmann report carries the certified verdicts") {
  auto sl3 = sl3_f2();
  Subgroup h = sl3.point_stabilizer(0);
  Subgroup k = sl3.plane_stabilizer(0);
  auto j = gassmann_report(sl3.group, h, k);
  CHECK(j["group_order"] == 168);
  CHECK(j["almost_conjugate"] == true);
  CHECK(j["conjugate"] == false);
  CHECK(j["intertwiner_verified_all_elements"] == true);
  CHECK(j["intertwiner"].size() == 7);
  CHECK(j["subgroup_h"]["index"] == 7);
}
