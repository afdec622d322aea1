#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace drums {

/// Permutation of {0..degree-1} stored by its image array.
///
/// Composition convention is diagrammatic throughout the project:
/// (a.then(b))(x) = b(a(x)), i.e. the left factor acts first. With this
/// convention right translation on right cosets is a homomorphism.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {}

  static Perm identity(int degree) {
    std::vector<int> v(degree);
    for (int i = 0; i < degree; ++i) v[i] = i;
    return Perm(std::move(v));
  }

  int degree() const { return (int)img_.size(); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Perm then(const Perm& b) const {
    std::vector<int> v(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) v[i] = b.img_[img_[i]];
    return Perm(std::move(v));
  }

  Perm inverse() const {
    std::vector<int> v(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) v[img_[i]] = (int)i;
    return Perm(std::move(v));
  }

  bool is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != (int)i) return false;
    return true;
  }

  bool is_valid() const {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= (int)img_.size() || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  int order() const {
    Perm p = *this;
    int n = 1;
    while (!p.is_identity()) {
      p = p.then(*this);
      ++n;
    }
    return n;
  }

  int fixed_points() const {
    int c = 0;
    for (size_t i = 0; i < img_.size(); ++i) c += (img_[i] == (int)i);
    return c;
  }

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

private:
  std::vector<int> img_;
};

struct PermHash {
  size_t operator()(const Perm& p) const noexcept {
    size_t h = 0x811c9dc5u;
    for (int v : p.images()) h = (h ^ (size_t)v) * 0x0100000001b3ull;
    return h;
  }
};

/// Finite permutation group: generators plus the enumerated closure.
/// Elements are sorted lexicographically, so element indices are canonical
/// and independent of generator order. Index 0 is always the identity.
class PermGroup {
public:
  PermGroup() = default;

  /// Breadth-first closure of the generators under composition.
  static PermGroup closure(std::vector<Perm> generators);

  int degree() const { return degree_; }
  int order() const { return (int)elems_.size(); }
  const std::vector<Perm>& elements() const { return elems_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const Perm& element(int i) const { return elems_[i]; }

  int index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw std::out_of_range("permutation not in group");
    return it->second;
  }
  bool contains(const Perm& p) const { return index_.count(p) != 0; }

  int identity_index() const { return id_; }
  int mul(int a, int b) const { return index_of(elems_[a].then(elems_[b])); }
  int inv(int a) const { return index_of(elems_[a].inverse()); }
  /// inv(g) * a * g, element acted on by conjugation.
  int conj(int a, int g) const {
    return index_of(elems_[g].inverse().then(elems_[a]).then(elems_[g]));
  }

private:
  int degree_ = 0;
  int id_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, int, PermHash> index_;
};

/// Subgroup given by member indices into the parent's element list.
class Subgroup {
public:
  Subgroup() = default;
  Subgroup(const PermGroup* parent, std::vector<int> members);

  /// Closure of a subset of parent elements inside the parent.
  static Subgroup generated(const PermGroup& parent, const std::vector<int>& gen_indices);

  const PermGroup& parent() const { return *parent_; }
  int order() const { return (int)members_.size(); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int elem_index) const { return member_mask_[elem_index] != 0; }

  bool is_closed() const;

private:
  const PermGroup* parent_ = nullptr;
  std::vector<int> members_;       // sorted element indices
  std::vector<char> member_mask_;  // size = parent order
};

/// Partition of a group into conjugacy classes, ordered by smallest member.
struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // sorted element indices per class
  std::vector<int> class_of;              // element index -> class id
  std::vector<int> representative;        // smallest member per class
};

ConjugacyClasses conjugacy_classes(const PermGroup& g);

bool is_almost_conjugate(const PermGroup& g, const Subgroup& h, const Subgroup& k);
bool is_almost_conjugate(const PermGroup& g, const Subgroup& h, const Subgroup& k,
                         const ConjugacyClasses& classes);
bool is_conjugate(const PermGroup& g, const Subgroup& h, const Subgroup& k);

/// Right-coset space of a subgroup with the right-translation action.
/// Coset i is represented by rep[i]; coset 0 contains the identity.
/// perms[e] is the induced permutation of cosets for group element e, and
/// e -> perms[e] preserves composition.
struct CosetAction {
  int index = 0;                 // number of cosets
  std::vector<int> rep;          // smallest element index per coset
  std::vector<int> coset_of;     // element index -> coset id
  std::vector<Perm> perms;       // one coset permutation per group element

  const Perm& perm(int elem_index) const { return perms[elem_index]; }
  int fixed_cosets(int elem_index) const { return perms[elem_index].fixed_points(); }
};

CosetAction coset_action(const PermGroup& g, const Subgroup& h);

}  // namespace drums
