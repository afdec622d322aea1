#include "drums/unfolding.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace drums {

GluingDiagram GluingDiagram::single() {
  GluingDiagram d;
  d.n = 1;
  for (auto& m : d.partner) m.assign(1, -1);
  return d;
}

GluingDiagram GluingDiagram::from_involutions(const CosetAction& action,
                                              const std::array<Perm, 3>& involutions) {
  GluingDiagram d;
  d.n = action.index;
  for (int c = 0; c < 3; ++c) {
    d.partner[c].assign(d.n, -1);
    for (int x = 0; x < d.n; ++x) {
      int y = involutions[c](x);
      if (y != x) d.partner[c][x] = y;
    }
  }
  return d;
}

bool GluingDiagram::valid() const {
  for (int c = 0; c < 3; ++c) {
    if ((int)partner[c].size() != n) return false;
    for (int x = 0; x < n; ++x) {
      int y = partner[c][x];
      if (y == x) return false;
      if (y >= 0 && (y >= n || partner[c][y] != x)) return false;
    }
  }
  return true;
}

int GluingDiagram::matched_edges() const {
  int count = 0;
  for (int c = 0; c < 3; ++c)
    for (int x = 0; x < n; ++x)
      if (partner[c][x] > x) ++count;
  return count;
}

std::array<int, 3> GluingDiagram::open_counts() const {
  std::array<int, 3> counts{0, 0, 0};
  for (int c = 0; c < 3; ++c)
    for (int x = 0; x < n; ++x)
      if (partner[c][x] < 0) ++counts[c];
  return counts;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

bool GluingDiagram::connected() const {
  UnionFind uf(n);
  int merges = 0;
  for (int c = 0; c < 3; ++c)
    for (int x = 0; x < n; ++x)
      if (partner[c][x] > x && uf.unite(x, partner[c][x])) ++merges;
  return merges == n - 1;
}

bool GluingDiagram::is_tree() const {
  // Distinct matched edges only: a doubled edge (same pair in two colors)
  // is a cycle in the multigraph sense.
  UnionFind uf(n);
  int edges = 0;
  for (int c = 0; c < 3; ++c)
    for (int x = 0; x < n; ++x)
      if (partner[c][x] > x) {
        if (!uf.unite(x, partner[c][x])) return false;
        ++edges;
      }
  return edges == n - 1;
}

DiagramDerivation derive_diagrams(const PermGroup& g, const CosetAction& h_action,
                                  const CosetAction& k_action) {
  std::vector<int> involutions;
  for (int e = 0; e < g.order(); ++e)
    if (e != g.identity_index() && g.mul(e, e) == g.identity_index())
      involutions.push_back(e);

  DiagramDerivation out;
  int scanned = 0;
  for (int a : involutions)
    for (int b : involutions)
      for (int c : involutions) {
        ++scanned;
        std::array<Perm, 3> ph = {h_action.perm(a), h_action.perm(b), h_action.perm(c)};
        GluingDiagram d1 = GluingDiagram::from_involutions(h_action, ph);
        if (!d1.is_tree()) continue;
        std::array<Perm, 3> pk = {k_action.perm(a), k_action.perm(b), k_action.perm(c)};
        GluingDiagram d2 = GluingDiagram::from_involutions(k_action, pk);
        if (!d2.is_tree()) continue;
        out.d1 = std::move(d1);
        out.d2 = std::move(d2);
        out.involutions = {a, b, c};
        out.involution_perms = {g.element(a), g.element(b), g.element(c)};
        out.triples_scanned = scanned;
        return out;
      }
  throw std::runtime_error("no involution triple yields trees in both coset actions");
}

PlanarDomain unfold(const GluingDiagram& diagram, const BaseTriangle& base, int root) {
  if (!diagram.valid()) throw std::invalid_argument("invalid gluing diagram");
  if (!diagram.connected()) throw std::invalid_argument("gluing diagram not connected");
  if (!base.nondegenerate()) throw std::invalid_argument("degenerate base triangle");
  if (root < 0 || root >= diagram.n) throw std::invalid_argument("root out of range");

  PlanarDomain dom;
  dom.base = base;
  dom.diagram = diagram;
  dom.root = root;
  dom.tri.assign(diagram.n, {});
  dom.edge.assign(diagram.n, {});

  std::vector<char> placed(diagram.n, 0);
  std::deque<int> queue;
  dom.tri[root] = base.v;
  placed[root] = 1;
  queue.push_back(root);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int c = 0; c < 3; ++c) {
      int y = diagram.partner[c][x];
      if (y < 0) {
        dom.edge[x][c] = {true, -1};
        continue;
      }
      dom.edge[x][c] = {false, y};
      if (placed[y]) continue;
      const int a = (c + 1) % 3, b = (c + 2) % 3;
      dom.tri[y][a] = dom.tri[x][a];
      dom.tri[y][b] = dom.tri[x][b];
      dom.tri[y][c] = reflect(dom.tri[x][c], dom.tri[x][a], dom.tri[x][b]);
      placed[y] = 1;
      queue.push_back(y);
    }
  }
  return dom;
}

Rational PlanarDomain::area2() const {
  Rational s(0);
  for (const auto& t : tri) s += orient(t[0], t[1], t[2]).abs();
  return s;
}

bool check_embedding(PlanarDomain& domain) {
  const int n = domain.nodes();
  domain.embedded = false;
  domain.boundary.clear();
  domain.boundary_tag.clear();

  // Pairwise disjoint interiors (exact convex clipping).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (triangle_interiors_overlap(domain.tri[i], domain.tri[j])) return false;

  // Interior edges must coincide endpoint-for-endpoint (nontrivial only for
  // diagrams with cycles; tree unfoldings satisfy it by construction).
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < 3; ++c) {
      const auto& st = domain.edge[x][c];
      if (st.is_boundary) continue;
      int y = st.partner;
      const int a = (c + 1) % 3, b = (c + 2) % 3;
      if (domain.tri[x][a] != domain.tri[y][a] || domain.tri[x][b] != domain.tri[y][b])
        return false;
    }

  // Collect boundary edges.
  struct BEdge {
    Vec2r p, q;
    int node, color;
  };
  std::vector<BEdge> edges;
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < 3; ++c)
      if (domain.edge[x][c].is_boundary) {
        const int a = (c + 1) % 3, b = (c + 2) % 3;
        edges.push_back({domain.tri[x][a], domain.tri[x][b], x, c});
      }
  if (edges.empty()) return false;

  // Every boundary vertex must meet exactly two boundary edges.
  std::unordered_map<Vec2r, std::vector<int>, Vec2rHash> at_vertex;
  for (int i = 0; i < (int)edges.size(); ++i) {
    at_vertex[edges[i].p].push_back(i);
    at_vertex[edges[i].q].push_back(i);
  }
  for (const auto& [v, inc] : at_vertex)
    if (inc.size() != 2) return false;

  // No boundary vertex in the relative interior of another boundary edge
  // (rules out T-junctions and corner-on-edge contacts).
  for (const auto& [v, inc] : at_vertex) {
    (void)inc;
    for (const auto& e : edges) {
      if (v == e.p || v == e.q) continue;
      if (on_segment(v, e.p, e.q)) return false;
    }
  }

  // Walk the cycle; it must cover every boundary edge exactly once.
  std::vector<char> used(edges.size(), 0);
  std::vector<Vec2r> cycle;
  std::vector<std::pair<int, int>> tags;
  int cur = 0;
  Vec2r at = edges[0].p;
  while (true) {
    used[cur] = 1;
    cycle.push_back(at);
    tags.emplace_back(edges[cur].node, edges[cur].color);
    Vec2r next = (edges[cur].p == at) ? edges[cur].q : edges[cur].p;
    const auto& inc = at_vertex[next];
    int next_edge = (inc[0] == cur) ? inc[1] : inc[0];
    if (used[next_edge]) {
      // Cycle closes; it must close at the start covering everything.
      cycle.push_back(next);
      break;
    }
    at = next;
    cur = next_edge;
  }
  if (cycle.back() != cycle.front()) return false;
  cycle.pop_back();
  if (cycle.size() != edges.size()) return false;
  if (std::count(used.begin(), used.end(), 1) != (int)edges.size()) return false;

  // Orient counterclockwise.
  if (polygon_area2(cycle).sign() < 0) {
    // Reversing the vertex cycle: edge i was (v_i, v_{i+1}); afterwards the
    // edge from new vertex j runs (v_{m-j}, v_{m-j-1}) = old edge m-j-1.
    std::vector<Vec2r> rc;
    std::vector<std::pair<int, int>> rt;
    const int m = (int)cycle.size();
    for (int j = 0; j < m; ++j) {
      rc.push_back(cycle[(m - j) % m]);
      rt.push_back(tags[m - 1 - j]);
    }
    cycle = std::move(rc);
    tags = std::move(rt);
  }

  // The polygon area must equal the summed triangle area.
  if (polygon_area2(cycle) != domain.area2()) return false;

  domain.boundary = std::move(cycle);
  domain.boundary_tag = std::move(tags);
  domain.embedded = true;
  return true;
}

BoundarySignature boundary_signature(const PlanarDomain& domain) {
  if (!domain.embedded || domain.boundary.empty())
    throw std::invalid_argument("boundary_signature requires an embedded domain");

  // Merge collinear chains so the signature describes maximal sides.
  std::vector<Vec2r> pts = domain.boundary;
  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    for (size_t i = 0; i < pts.size(); ++i) {
      const Vec2r& prev = pts[(i + pts.size() - 1) % pts.size()];
      const Vec2r& next = pts[(i + 1) % pts.size()];
      if (orient(prev, pts[i], next).is_zero()) {
        pts.erase(pts.begin() + i);
        changed = true;
        break;
      }
    }
  }

  auto sequence = [](const std::vector<Vec2r>& p) {
    const int m = (int)p.size();
    std::vector<std::array<Rational, 3>> seq(m);
    for (int i = 0; i < m; ++i) {
      Vec2r s = p[(i + 1) % m] - p[i];
      Vec2r t = p[(i + 2) % m] - p[(i + 1) % m];
      seq[i] = {norm2(s), dot(s, t), cross(s, t)};
    }
    return seq;
  };

  auto best_rotation = [](const std::vector<std::array<Rational, 3>>& seq,
                          std::vector<std::array<Rational, 3>>& best, bool& have) {
    const int m = (int)seq.size();
    for (int r = 0; r < m; ++r) {
      std::vector<std::array<Rational, 3>> rot(m);
      for (int i = 0; i < m; ++i) rot[i] = seq[(i + r) % m];
      if (!have || rot < best) {
        best = std::move(rot);
        have = true;
      }
    }
  };

  auto negate_cross = [](std::vector<std::array<Rational, 3>> seq) {
    for (auto& t : seq) t[2] = -t[2];
    return seq;
  };

  // Candidates: both traversal directions and both mirror images, so the
  // minimum is a true congruence invariant (reflections included).
  std::vector<std::array<Rational, 3>> best;
  bool have = false;
  auto fwd = sequence(pts);
  std::vector<Vec2r> rev(pts.rbegin(), pts.rend());
  auto bwd = sequence(rev);
  best_rotation(fwd, best, have);
  best_rotation(bwd, best, have);
  best_rotation(negate_cross(fwd), best, have);
  best_rotation(negate_cross(bwd), best, have);

  BoundarySignature sig;
  sig.canon = std::move(best);
  return sig;
}

std::string to_svg(const PlanarDomain& domain, const SvgOptions& options) {
  static const char* kColor[3] = {"#d62728", "#2ca02c", "#1f77b4"};
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (const auto& t : domain.tri)
    for (const auto& v : t) {
      auto [x, y] = v.to_double();
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  const double s = options.scale;
  const double pad = 0.08 * std::max(maxx - minx, maxy - miny) * s + 4.0;
  const double w = (maxx - minx) * s + 2 * pad;
  const double h = (maxy - miny) * s + 2 * pad;
  auto px = [&](const Vec2r& v) { return (v.x.to_double() - minx) * s + pad; };
  auto py = [&](const Vec2r& v) { return (maxy - v.y.to_double()) * s + pad; };

  std::string out;
  char buf[512];
  auto emit = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.2f\" height=\"%.2f\" "
       "viewBox=\"0 0 %.2f %.2f\">\n", w, h, w, h);
  for (const auto& t : domain.tri) {
    emit("  <polygon points=\"%.4f,%.4f %.4f,%.4f %.4f,%.4f\" fill=\"#f0f0f0\" "
         "stroke=\"none\"/>\n",
         px(t[0]), py(t[0]), px(t[1]), py(t[1]), px(t[2]), py(t[2]));
  }
  for (int x = 0; x < domain.nodes(); ++x)
    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3, b = (c + 2) % 3;
      const auto& st = domain.edge[x][c];
      if (!st.is_boundary && st.partner < x) continue;  // draw shared edges once
      const Vec2r& p = domain.tri[x][a];
      const Vec2r& q = domain.tri[x][b];
      if (st.is_boundary) {
        emit("  <line x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" stroke=\"%s\" "
             "stroke-width=\"2.5\"/>\n", px(p), py(p), px(q), py(q), kColor[c]);
      } else {
        emit("  <line x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" stroke=\"%s\" "
             "stroke-width=\"1.0\" stroke-dasharray=\"5 4\"/>\n",
             px(p), py(p), px(q), py(q), kColor[c]);
      }
    }
  if (options.node_labels) {
    for (int x = 0; x < domain.nodes(); ++x) {
      const auto& t = domain.tri[x];
      Vec2r cen = Rational(1, 3) * (t[0] + t[1] + t[2]);
      emit("  <text x=\"%.4f\" y=\"%.4f\" font-size=\"%.2f\" text-anchor=\"middle\" "
           "fill=\"#444\">%d</text>\n", px(cen), py(cen) + 4.0, 0.14 * s, x);
    }
  }
  out += "</svg>\n";
  return out;
}

nlohmann::ordered_json PlanarDomain::to_json() const {
  nlohmann::ordered_json j;
  auto rat = [](const Rational& r) { return r.str(); };
  auto vec = [&](const Vec2r& v) {
    return nlohmann::ordered_json{{"x", rat(v.x)},
                                  {"y", rat(v.y)},
                                  {"xd", v.x.to_double()},
                                  {"yd", v.y.to_double()}};
  };

  j["base_triangle"] = {vec(base.v[0]), vec(base.v[1]), vec(base.v[2])};
  nlohmann::ordered_json matchings = nlohmann::ordered_json::array();
  for (int c = 0; c < 3; ++c) matchings.push_back(diagram.partner[c]);
  j["diagram"] = {{"nodes", diagram.n}, {"matchings", matchings}};
  j["root"] = root;

  nlohmann::ordered_json tris = nlohmann::ordered_json::array();
  for (int x = 0; x < nodes(); ++x) {
    nlohmann::ordered_json t;
    t["vertices"] = {vec(tri[x][0]), vec(tri[x][1]), vec(tri[x][2])};
    nlohmann::ordered_json statuses = nlohmann::ordered_json::array();
    for (int c = 0; c < 3; ++c) {
      if (edge[x][c].is_boundary)
        statuses.push_back({{"color", c}, {"boundary", true}});
      else
        statuses.push_back({{"color", c}, {"boundary", false},
                            {"partner", edge[x][c].partner}});
    }
    t["edges"] = statuses;
    tris.push_back(t);
  }
  j["triangles"] = tris;
  j["area"] = {{"exact", (area2() * Rational(1, 2)).str()},
               {"value", (area2() * Rational(1, 2)).to_double()}};

  if (embedded) {
    nlohmann::ordered_json poly = nlohmann::ordered_json::array();
    for (const auto& p : boundary) poly.push_back(vec(p));
    j["boundary_polygon"] = poly;
    auto counts = boundary_color_counts();
    j["boundary_color_counts"] = {counts[0], counts[1], counts[2]};
    nlohmann::ordered_json sig = nlohmann::ordered_json::array();
    for (const auto& row : boundary_signature(*this).canon)
      sig.push_back({rat(row[0]), rat(row[1]), rat(row[2])});
    j["signature"] = sig;
  }
  return j;
}

DrumPair canonical_drums(const PermGroup& g, const CosetAction& h_action,
                         const CosetAction& k_action, const BaseTriangle& base) {
  std::vector<int> involutions;
  for (int e = 0; e < g.order(); ++e)
    if (e != g.identity_index() && g.mul(e, e) == g.identity_index())
      involutions.push_back(e);

  int scanned = 0;
  for (int a : involutions)
    for (int b : involutions)
      for (int c : involutions) {
        ++scanned;
        std::array<Perm, 3> ph = {h_action.perm(a), h_action.perm(b), h_action.perm(c)};
        GluingDiagram d1 = GluingDiagram::from_involutions(h_action, ph);
        if (!d1.is_tree()) continue;
        std::array<Perm, 3> pk = {k_action.perm(a), k_action.perm(b), k_action.perm(c)};
        GluingDiagram d2 = GluingDiagram::from_involutions(k_action, pk);
        if (!d2.is_tree()) continue;

        PlanarDomain drum1 = unfold(d1, base, 0);
        if (!check_embedding(drum1)) continue;
        PlanarDomain drum2 = unfold(d2, base, 0);
        if (!check_embedding(drum2)) continue;
        // Some triples unfold to congruent (typically mirror-image) domains;
        // the pair must be certifiably nonisometric.
        if (boundary_signature(drum1) == boundary_signature(drum2)) continue;

        DrumPair out;
        out.derivation.d1 = std::move(d1);
        out.derivation.d2 = std::move(d2);
        out.derivation.involutions = {a, b, c};
        out.derivation.involution_perms = {g.element(a), g.element(b), g.element(c)};
        out.derivation.triples_scanned = scanned;
        out.drum1 = std::move(drum1);
        out.drum2 = std::move(drum2);
        return out;
      }
  throw std::runtime_error("no involution triple yields embeddable tree unfoldings");
}

}  // namespace drums
