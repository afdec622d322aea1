#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "drums/unfolding.hpp"

namespace drums {

struct BoundaryEdge {
  int a = 0, b = 0;  // global vertex ids
  int color = 0;     // originating gluing color
  int node = 0;      // originating base triangle
};

/// Conforming triangulation of a PlanarDomain obtained by uniform midpoint
/// subdivision of every base triangle `level` times. Vertices shared between
/// base triangles are identified by exact coordinate, elements are emitted
/// per base triangle in a fixed reference order (element t*4^level + r of one
/// drum corresponds to element t'*4^level + r of the other), and all elements
/// are positively oriented.
struct Mesh {
  int level = 0;
  std::vector<Vec2r> coords_exact;
  std::vector<std::array<double, 2>> coords;
  std::vector<std::array<int, 3>> elems;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<std::vector<int>> node_vertices;  // per base node: ref index -> global

  int vertex_count() const { return (int)coords.size(); }
  int element_count() const { return (int)elems.size(); }
  int subdivisions() const { return 1 << level; }

  /// Vertices of the reference subdivision are the lattice points (i, j),
  /// i + j <= m, enumerated row by row (j outer, i inner).
  static int ref_index(int m, int i, int j) {
    return j * (m + 1) - j * (j - 1) / 2 + i;
  }
  static int ref_vertex_count(int m) { return (m + 1) * (m + 2) / 2; }
};

Mesh refine(const PlanarDomain& domain, int level);

/// Text format: header "nv ne nb", then "v x y", "e i j k", "b i j tag"
/// lines; the boundary tag is the gluing color.
void write_mesh_text(const Mesh& mesh, std::ostream& out);
Mesh read_mesh_text(std::istream& in);

}  // namespace drums
