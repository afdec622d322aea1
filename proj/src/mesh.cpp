#include "drums/mesh.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace drums {

Mesh refine(const PlanarDomain& domain, int level) {
  if (level < 0) throw std::invalid_argument("refinement level must be >= 0");
  const int m = 1 << level;
  const int n = domain.nodes();

  Mesh mesh;
  mesh.level = level;
  mesh.node_vertices.assign(n, {});

  std::unordered_map<Vec2r, int, Vec2rHash> global;
  auto intern = [&](const Vec2r& p) {
    auto [it, inserted] = global.emplace(p, (int)mesh.coords_exact.size());
    if (inserted) {
      mesh.coords_exact.push_back(p);
      mesh.coords.push_back(p.to_double());
    }
    return it->second;
  };

  for (int t = 0; t < n; ++t) {
    const Vec2r& a = domain.tri[t][0];
    const Vec2r e1 = domain.tri[t][1] - a;
    const Vec2r e2 = domain.tri[t][2] - a;
    auto& verts = mesh.node_vertices[t];
    verts.reserve(Mesh::ref_vertex_count(m));
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i <= m - j; ++i)
        verts.push_back(intern(a + Rational(i, m) * e1 + Rational(j, m) * e2));

    // Mirrored placements need their vertex order flipped to stay CCW.
    const bool flip = orient(domain.tri[t][0], domain.tri[t][1], domain.tri[t][2]).sign() < 0;
    auto emit = [&](int p, int q, int r) {
      if (flip)
        mesh.elems.push_back({verts[p], verts[r], verts[q]});
      else
        mesh.elems.push_back({verts[p], verts[q], verts[r]});
    };
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m - j; ++i) {
        emit(Mesh::ref_index(m, i, j), Mesh::ref_index(m, i + 1, j),
             Mesh::ref_index(m, i, j + 1));
        if (i + j < m - 1)
          emit(Mesh::ref_index(m, i + 1, j), Mesh::ref_index(m, i + 1, j + 1),
               Mesh::ref_index(m, i, j + 1));
      }

    for (int c = 0; c < 3; ++c) {
      if (!domain.edge[t][c].is_boundary) continue;
      for (int s = 0; s < m; ++s) {
        int ra, rb;
        switch (c) {
          case 2:  // j = 0, from vertex 0 to vertex 1
            ra = Mesh::ref_index(m, s, 0);
            rb = Mesh::ref_index(m, s + 1, 0);
            break;
          case 1:  // i = 0, from vertex 0 to vertex 2
            ra = Mesh::ref_index(m, 0, s);
            rb = Mesh::ref_index(m, 0, s + 1);
            break;
          default:  // i + j = m, from vertex 1 to vertex 2
            ra = Mesh::ref_index(m, m - s, s);
            rb = Mesh::ref_index(m, m - s - 1, s + 1);
            break;
        }
        mesh.boundary_edges.push_back({verts[ra], verts[rb], c, t});
      }
    }
  }
  return mesh;
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  out << mesh.vertex_count() << ' ' << mesh.element_count() << ' '
      << mesh.boundary_edges.size() << '\n';
  char buf[128];
  for (const auto& p : mesh.coords) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", p[0], p[1]);
    out << buf;
  }
  for (const auto& e : mesh.elems) out << "e " << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
  for (const auto& b : mesh.boundary_edges)
    out << "b " << b.a << ' ' << b.b << ' ' << b.color << '\n';
}

Mesh read_mesh_text(std::istream& in) {
  Mesh mesh;
  size_t nv = 0, ne = 0, nb = 0;
  if (!(in >> nv >> ne >> nb)) throw std::runtime_error("bad mesh header");
  mesh.coords.reserve(nv);
  mesh.elems.reserve(ne);
  mesh.boundary_edges.reserve(nb);
  std::string tag;
  for (size_t i = 0; i < nv; ++i) {
    double x, y;
    if (!(in >> tag >> x >> y) || tag != "v") throw std::runtime_error("bad vertex line");
    mesh.coords.push_back({x, y});
  }
  for (size_t i = 0; i < ne; ++i) {
    int a, b, c;
    if (!(in >> tag >> a >> b >> c) || tag != "e") throw std::runtime_error("bad element line");
    mesh.elems.push_back({a, b, c});
  }
  for (size_t i = 0; i < nb; ++i) {
    int a, b, color;
    if (!(in >> tag >> a >> b >> color) || tag != "b")
      throw std::runtime_error("bad boundary line");
    mesh.boundary_edges.push_back({a, b, color, -1});
  }
  return mesh;
}

}  // namespace drums
