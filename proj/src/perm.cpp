#include "drums/perm.hpp"

#include <algorithm>
#include <deque>

namespace drums {

PermGroup PermGroup::closure(std::vector<Perm> generators) {
  if (generators.empty()) throw std::invalid_argument("closure needs at least one generator");
  const int degree = generators[0].degree();
  for (const Perm& g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (!g.is_valid()) throw std::invalid_argument("generator is not a bijection");
  }

  std::unordered_map<Perm, int, PermHash> seen;
  std::deque<Perm> queue;
  std::vector<Perm> elems;
  Perm id = Perm::identity(degree);
  seen.emplace(id, 0);
  elems.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm cur = queue.front();
    queue.pop_front();
    for (const Perm& g : generators) {
      Perm next = cur.then(g);
      if (seen.emplace(next, 0).second) {
        elems.push_back(next);
        queue.push_back(next);
      }
    }
  }

  std::sort(elems.begin(), elems.end());
  PermGroup grp;
  grp.degree_ = degree;
  grp.gens_ = std::move(generators);
  grp.elems_ = std::move(elems);
  grp.index_.reserve(grp.elems_.size() * 2);
  for (int i = 0; i < (int)grp.elems_.size(); ++i) grp.index_.emplace(grp.elems_[i], i);
  grp.id_ = grp.index_.at(Perm::identity(degree));
  return grp;
}

Subgroup::Subgroup(const PermGroup* parent, std::vector<int> members)
    : parent_(parent), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  member_mask_.assign(parent_->order(), 0);
  for (int m : members_) member_mask_[m] = 1;
}

Subgroup Subgroup::generated(const PermGroup& parent, const std::vector<int>& gen_indices) {
  std::vector<char> in(parent.order(), 0);
  std::deque<int> queue;
  std::vector<int> members;
  int id = parent.identity_index();
  in[id] = 1;
  members.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int g : gen_indices) {
      int next = parent.mul(cur, g);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
        queue.push_back(next);
      }
    }
  }
  return Subgroup(&parent, std::move(members));
}

bool Subgroup::is_closed() const {
  for (int a : members_) {
    if (!member_mask_[parent_->inv(a)]) return false;
    for (int b : members_)
      if (!member_mask_[parent_->mul(a, b)]) return false;
  }
  return member_mask_[parent_->identity_index()] != 0;
}

ConjugacyClasses conjugacy_classes(const PermGroup& g) {
  const int n = g.order();
  ConjugacyClasses out;
  out.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (out.class_of[x] >= 0) continue;
    int id = (int)out.classes.size();
    std::vector<int> cls;
    for (int e = 0; e < n; ++e) {
      int y = g.conj(x, e);
      if (out.class_of[y] < 0) {
        out.class_of[y] = id;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.representative.push_back(cls.front());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

bool is_almost_conjugate(const PermGroup& g, const Subgroup& h, const Subgroup& k,
                         const ConjugacyClasses& classes) {
  (void)g;
  std::vector<int> ch(classes.classes.size(), 0), ck(classes.classes.size(), 0);
  for (int m : h.members()) ch[classes.class_of[m]]++;
  for (int m : k.members()) ck[classes.class_of[m]]++;
  return ch == ck;
}

bool is_almost_conjugate(const PermGroup& g, const Subgroup& h, const Subgroup& k) {
  return is_almost_conjugate(g, h, k, conjugacy_classes(g));
}

bool is_conjugate(const PermGroup& g, const Subgroup& h, const Subgroup& k) {
  if (h.order() != k.order()) return false;
  for (int e = 0; e < g.order(); ++e) {
    bool all = true;
    for (int m : h.members()) {
      if (!k.contains(g.conj(m, e))) {
        all = false;
        break;
      }
    }
    if (all) return true;  // same order, injective map => equality
  }
  return false;
}

CosetAction coset_action(const PermGroup& g, const Subgroup& h) {
  const int n = g.order();
  CosetAction act;
  act.coset_of.assign(n, -1);
  // Coset of x = { h.then(x) : h in H }; labelled by its smallest element.
  for (int x = 0; x < n; ++x) {
    if (act.coset_of[x] >= 0) continue;
    int id = (int)act.rep.size();
    int smallest = n;
    std::vector<int> members;
    for (int m : h.members()) {
      int y = g.mul(m, x);
      if (act.coset_of[y] < 0) {
        act.coset_of[y] = id;
        members.push_back(y);
        smallest = std::min(smallest, y);
      }
    }
    act.rep.push_back(smallest);
  }
  act.index = (int)act.rep.size();

  // Cosets are discovered in increasing order of smallest member because the
  // outer loop scans elements in lex order, so labels are already canonical.
  act.perms.reserve(n);
  for (int e = 0; e < n; ++e) {
    std::vector<int> img(act.index);
    for (int c = 0; c < act.index; ++c) img[c] = act.coset_of[g.mul(act.rep[c], e)];
    act.perms.emplace_back(std::move(img));
  }
  return act;
}

}  // namespace drums
