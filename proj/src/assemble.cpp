#include "drums/assemble.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace drums {

namespace {

BCKind color_kind(const BCSpec& bc, int color) {
  switch (bc.mode) {
    case BCSpec::Mode::Dirichlet: return BCKind::Dirichlet;
    case BCSpec::Mode::Neumann: return BCKind::Neumann;
    default: {
      auto it = bc.per_color.find(color);
      if (it == bc.per_color.end())
        throw std::invalid_argument("mixed boundary spec leaves color " +
                                    std::to_string(color) + " unassigned");
      return it->second;
    }
  }
}

// Deterministic symmetric accumulation: values for (i,j) and (j,i) arrive in
// the same element order, so the floating-point sums are bitwise equal.
struct Accumulator {
  int n;
  std::unordered_map<long long, double> vals;

  explicit Accumulator(int n_) : n(n_) { vals.reserve(16 * (size_t)n_); }
  void add(int i, int j, double v) { vals[(long long)i * n + j] += v; }

  Eigen::SparseMatrix<double> build() const {
    std::vector<long long> keys;
    keys.reserve(vals.size());
    for (const auto& [k, v] : vals) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(keys.size());
    for (long long k : keys)
      trips.emplace_back((int)(k / n), (int)(k % n), vals.at(k));
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
  }
};

}  // namespace

AssembledSystem assemble(const Mesh& mesh, const BCSpec& bc) {
  if (bc.mode == BCSpec::Mode::Mixed) {
    std::set<int> present;
    for (const auto& e : mesh.boundary_edges) present.insert(e.color);
    for (int c : present) (void)color_kind(bc, c);
  }

  AssembledSystem sys;
  sys.n_global = mesh.vertex_count();

  std::vector<char> constrained(sys.n_global, 0);
  for (const auto& e : mesh.boundary_edges) {
    if (color_kind(bc, e.color) == BCKind::Dirichlet) {
      constrained[e.a] = 1;
      constrained[e.b] = 1;
    }
  }
  sys.global2free.assign(sys.n_global, -1);
  for (int v = 0; v < sys.n_global; ++v) {
    if (constrained[v])
      sys.constrained.push_back(v);
    else {
      sys.global2free[v] = (int)sys.free2global.size();
      sys.free2global.push_back(v);
    }
  }

  const int nf = sys.n_free();
  Accumulator acc_a(nf), acc_b(nf);
  for (const auto& el : mesh.elems) {
    const auto& p0 = mesh.coords[el[0]];
    const auto& p1 = mesh.coords[el[1]];
    const auto& p2 = mesh.coords[el[2]];
    // Gradient coefficients of the barycentric basis: b_i = y_j - y_k,
    // c_i = x_k - x_j (cyclic); K_ij = (b_i b_j + c_i c_j) / (4 area).
    const double b[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
    const double c[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
    const double area2 =
        (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
    const double area = 0.5 * area2;
    const double mass_off = area / 12.0;

    for (int i = 0; i < 3; ++i) {
      const int gi = sys.global2free[el[i]];
      if (gi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int gj = sys.global2free[el[j]];
        if (gj < 0) continue;
        acc_a.add(gi, gj, (b[i] * b[j] + c[i] * c[j]) / (2.0 * area2));
        acc_b.add(gi, gj, i == j ? 2.0 * mass_off : mass_off);
      }
    }
  }
  sys.A = acc_a.build();
  sys.B = acc_b.build();
  return sys;
}

}  // namespace drums
