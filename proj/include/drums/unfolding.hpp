#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "drums/geometry.hpp"
#include "drums/perm.hpp"

namespace drums {

/// Combinatorial recipe for a drum: n triangles ("nodes") with a partial
/// matching per gluing color. partner[c][x] is the node glued to x along the
/// color-c edge, or -1 when that edge is open (a boundary edge).
struct GluingDiagram {
  int n = 0;
  std::array<std::vector<int>, 3> partner;

  static GluingDiagram single();  // one free triangle
  /// Schreier diagram of three involutions acting on a coset space: node x is
  /// matched to x.g_c when moved, open when fixed.
  static GluingDiagram from_involutions(const CosetAction& action,
                                        const std::array<Perm, 3>& involutions);

  bool valid() const;           // matchings symmetric and loop-free
  bool connected() const;
  bool is_tree() const;         // connected with exactly n-1 distinct edges
  int matched_edges() const;
  std::array<int, 3> open_counts() const;
};

/// Congruent tile every drum is built from. Edge c is opposite vertex c.
struct BaseTriangle {
  std::array<Vec2r, 3> v;

  static BaseTriangle right_isosceles() {
    return {{Vec2r{Rational(0), Rational(0)}, Vec2r{Rational(1), Rational(0)},
             Vec2r{Rational(0), Rational(1)}}};
  }

  Rational area2() const { return orient(v[0], v[1], v[2]).abs(); }
  bool nondegenerate() const { return !orient(v[0], v[1], v[2]).is_zero(); }
};

struct EdgeStatus {
  bool is_boundary = true;
  int partner = -1;  // node index when interior
};

/// A gluing diagram unfolded into the plane: one placed congruent triangle
/// per node, with labeled vertices (reflection preserves labels). Boundary
/// data is filled in by check_embedding.
struct PlanarDomain {
  BaseTriangle base;
  GluingDiagram diagram;
  int root = 0;

  std::vector<std::array<Vec2r, 3>> tri;          // per node
  std::vector<std::array<EdgeStatus, 3>> edge;    // per node, per color

  bool embedded = false;                          // set by check_embedding
  std::vector<Vec2r> boundary;                    // CCW simple cycle
  std::vector<std::pair<int, int>> boundary_tag;  // (node, color) per cycle edge

  int nodes() const { return (int)tri.size(); }
  Rational area2() const;
  std::array<int, 3> boundary_color_counts() const { return diagram.open_counts(); }
  nlohmann::ordered_json to_json() const;
};

struct DiagramDerivation {
  GluingDiagram d1, d2;
  std::array<int, 3> involutions;     // element indices into the group
  std::array<Perm, 3> involution_perms;
  int triples_scanned = 0;
};

/// Scans involution triples of the group in lexicographic order (by element
/// index) and returns the first whose Schreier diagrams on both coset spaces
/// are trees. Throws std::runtime_error when the search is exhausted.
DiagramDerivation derive_diagrams(const PermGroup& g, const CosetAction& h_action,
                                  const CosetAction& k_action);

/// Breadth-first unfolding: the root node receives the base triangle, every
/// matched neighbor is the mirror image of its parent across the shared
/// colored edge. The diagram must be connected.
PlanarDomain unfold(const GluingDiagram& diagram, const BaseTriangle& base, int root);

/// Exact embedding check: triangle interiors pairwise disjoint, interior
/// edges matching endpoint-for-endpoint, and boundary edges forming a single
/// simple closed curve. Fills the domain's boundary cycle on success.
bool check_embedding(PlanarDomain& domain);

/// Canonical congruence invariant of the boundary polygon: the cyclic
/// sequence of (squared side length, dot, cross) per maximal side, minimized
/// over rotations and both orientations. Equal signatures == isometric
/// polygons.
struct BoundarySignature {
  std::vector<std::array<Rational, 3>> canon;

  friend bool operator==(const BoundarySignature& a, const BoundarySignature& b) {
    return a.canon == b.canon;
  }
  friend bool operator!=(const BoundarySignature& a, const BoundarySignature& b) {
    return !(a == b);
  }
};

BoundarySignature boundary_signature(const PlanarDomain& domain);

struct SvgOptions {
  bool node_labels = false;
  double scale = 120.0;
};

std::string to_svg(const PlanarDomain& domain, const SvgOptions& options = {});

/// The two drums used throughout: first involution triple (lex order) whose
/// diagrams are trees on both coset spaces and whose unfoldings both embed
/// with the given base triangle and are not congruent to each other.
struct DrumPair {
  DiagramDerivation derivation;
  PlanarDomain drum1, drum2;
};

DrumPair canonical_drums(const PermGroup& g, const CosetAction& h_action,
                         const CosetAction& k_action, const BaseTriangle& base);

}  // namespace drums
