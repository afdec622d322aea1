#include "drums/gassmann.hpp"

#include <algorithm>
#include <stdexcept>

namespace drums {

namespace {

// Multiply matrix (column bitmasks) by vector (bitmask): xor of selected columns.
uint8_t apply_mat(const std::array<uint8_t, 3>& m, uint8_t v) {
  uint8_t w = 0;
  for (int k = 0; k < 3; ++k)
    if (v & (1 << k)) w ^= m[k];
  return w;
}

std::array<uint8_t, 3> mat_mul(const std::array<uint8_t, 3>& a,
                               const std::array<uint8_t, 3>& b) {
  // (a*b) column k = a applied to b's column k.
  return {apply_mat(a, b[0]), apply_mat(a, b[1]), apply_mat(a, b[2])};
}

std::array<uint8_t, 3> mat_transpose(const std::array<uint8_t, 3>& m) {
  std::array<uint8_t, 3> t{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[j] & (1 << i)) t[i] |= (1 << j);
  return t;
}

Perm point_perm(const std::array<uint8_t, 3>& m) {
  std::vector<int> img(7);
  for (uint8_t v = 1; v <= 7; ++v) img[v - 1] = apply_mat(m, v) - 1;
  return Perm(std::move(img));
}

}  // namespace

Sl3F2 sl3_f2() {
  // Standard generators: a 3-cycle of coordinates and a transvection.
  const std::array<uint8_t, 3> cyc = {0b010, 0b100, 0b001};   // e1->e2->e3->e1
  const std::array<uint8_t, 3> trans = {0b011, 0b010, 0b100}; // e1 -> e1+e2

  // Closure over matrices first so the plane action can be derived per element.
  std::vector<std::array<uint8_t, 3>> mats;
  std::vector<char> seen(512, 0);
  auto key = [](const std::array<uint8_t, 3>& m) {
    return (int)m[0] | ((int)m[1] << 3) | ((int)m[2] << 6);
  };
  std::array<uint8_t, 3> id = {0b001, 0b010, 0b100};
  mats.push_back(id);
  seen[key(id)] = 1;
  for (size_t head = 0; head < mats.size(); ++head) {
    auto cur = mats[head];
    for (const auto& g : {cyc, trans}) {
      auto next = mat_mul(g, cur);
      if (!seen[key(next)]) {
        seen[key(next)] = 1;
        mats.push_back(next);
      }
    }
  }

  PermGroup grp = PermGroup::closure({point_perm(cyc), point_perm(trans)});
  if ((int)mats.size() != grp.order())
    throw std::logic_error("matrix closure and permutation closure disagree");

  Sl3F2 out;
  out.group = std::move(grp);
  out.plane_perms.resize(out.group.order());
  out.mats.resize(out.group.order());
  for (const auto& m : mats) out.mats[out.group.index_of(point_perm(m))] = m;
  // Plane with normal u maps to the plane with normal (M^-1)^t u.
  for (int i = 0; i < out.group.order(); ++i) {
    const auto& minv = out.mats[out.group.inv(i)];
    auto mit = mat_transpose(minv);
    std::vector<int> img(7);
    for (uint8_t u = 1; u <= 7; ++u) img[u - 1] = apply_mat(mit, u) - 1;
    out.plane_perms[i] = Perm(std::move(img));
  }
  return out;
}

Subgroup Sl3F2::point_stabilizer(int point) const {
  std::vector<int> members;
  for (int i = 0; i < group.order(); ++i)
    if (group.element(i)(point) == point) members.push_back(i);
  return Subgroup(&group, std::move(members));
}

Subgroup Sl3F2::plane_stabilizer(int plane) const {
  std::vector<int> members;
  for (int i = 0; i < group.order(); ++i)
    if (plane_perms[i](plane) == plane) members.push_back(i);
  return Subgroup(&group, std::move(members));
}

Intertwiner intertwiner(const PermGroup& g, const CosetAction& h_action,
                        const CosetAction& k_action) {
  if (h_action.index != k_action.index)
    throw std::invalid_argument("coset actions have different index");

  // Enforcing the constraint on group generators suffices; verification over
  // all elements happens below.
  std::vector<EquivarianceGen> gens;
  for (const Perm& gp : g.generators()) {
    int e = g.index_of(gp);
    gens.push_back({k_action.perm(e), h_action.perm(e), +1});
  }
  auto basis = equivariant_basis(k_action.index, h_action.index, gens);
  auto t = select_invertible(basis);
  if (!t)
    throw std::runtime_error(
        "no invertible intertwiner: coset representations are inequivalent");
  if (!verify_intertwiner(g, h_action, k_action, *t))
    throw std::logic_error("intertwiner fails on a non-generator element");

  Intertwiner out;
  out.t = *t;
  auto normalized = orthogonalize_intertwiner(*t);
  if (!normalized)
    throw std::runtime_error("intertwiner does not admit an exact unitary rescaling");
  out.normalized = *normalized;
  return out;
}

bool verify_intertwiner(const PermGroup& g, const CosetAction& h_action,
                        const CosetAction& k_action, const RatMat& t) {
  const int n = t.rows();
  for (int e = 0; e < g.order(); ++e) {
    const Perm& ph = h_action.perm(e);
    const Perm& pk = k_action.perm(e);
    // Entry form of T rho_H(e) = rho_K(e) T: T[y.e, x.e] == T[y, x].
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (!(t(pk(y), ph(x)) == t(y, x))) return false;
  }
  return true;
}

nlohmann::ordered_json gassmann_report(const PermGroup& g, const Subgroup& h,
                                       const Subgroup& k) {
  nlohmann::ordered_json j;
  j["group_order"] = g.order();
  j["degree"] = g.degree();

  auto classes = conjugacy_classes(g);
  std::vector<int> sizes;
  for (const auto& c : classes.classes) sizes.push_back((int)c.size());
  j["class_sizes"] = sizes;

  j["subgroup_h"] = {{"order", h.order()}, {"index", g.order() / h.order()}};
  j["subgroup_k"] = {{"order", k.order()}, {"index", g.order() / k.order()}};

  std::vector<int> hc(classes.classes.size(), 0), kc(classes.classes.size(), 0);
  for (int m : h.members()) hc[classes.class_of[m]]++;
  for (int m : k.members()) kc[classes.class_of[m]]++;
  j["class_intersections_h"] = hc;
  j["class_intersections_k"] = kc;

  const bool almost = is_almost_conjugate(g, h, k, classes);
  const bool conj = is_conjugate(g, h, k);
  j["almost_conjugate"] = almost;
  j["conjugate"] = conj;

  if (almost) {
    auto ha = coset_action(g, h);
    auto ka = coset_action(g, k);
    auto tw = intertwiner(g, ha, ka);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int y = 0; y < tw.t.rows(); ++y) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int x = 0; x < tw.t.cols(); ++x)
        row.push_back({tw.t(y, x).num(), tw.t(y, x).den()});
      rows.push_back(row);
    }
    j["intertwiner"] = rows;
    j["intertwiner_verified_all_elements"] = verify_intertwiner(g, ha, ka, tw.t);
    j["unitary_normalization"] = {{"exact", tw.normalized.exact},
                                  {"radicand", tw.normalized.radicand}};
  }
  return j;
}

}  // namespace drums
