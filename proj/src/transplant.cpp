#include "drums/transplant.hpp"

#include <cmath>

namespace drums {

std::array<int, 3> reflection_signs(const BCSpec& bc) {
  std::array<int, 3> signs;
  for (int c = 0; c < 3; ++c) {
    BCKind kind;
    switch (bc.mode) {
      case BCSpec::Mode::Dirichlet: kind = BCKind::Dirichlet; break;
      case BCSpec::Mode::Neumann: kind = BCKind::Neumann; break;
      default: {
        auto it = bc.per_color.find(c);
        if (it == bc.per_color.end())
          throw std::invalid_argument("mixed boundary spec leaves color " +
                                      std::to_string(c) + " unassigned");
        kind = it->second;
      }
    }
    signs[c] = (kind == BCKind::Dirichlet) ? -1 : +1;
  }
  return signs;
}

bool verify_signed_intertwining(const RatMat& t, const Perm& h_perm, const Perm& k_perm,
                                int sign) {
  const int n = t.rows();
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      int s = 1;
      if (sign < 0) {
        if (k_perm(y) == y) s = -s;
        if (h_perm(x) == x) s = -s;
      }
      Rational lhs = t(k_perm(y), h_perm(x));
      Rational rhs = (s > 0) ? t(y, x) : -t(y, x);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

Transplantation build_transplantation(const Intertwiner& plain,
                                      const DiagramDerivation& derivation,
                                      const CosetAction& h_action,
                                      const CosetAction& k_action,
                                      const std::array<int, 3>& signs) {
  Transplantation out;
  out.signs = signs;
  out.involutions = derivation.involutions;

  const bool all_plus = signs[0] > 0 && signs[1] > 0 && signs[2] > 0;
  if (all_plus) {
    out.t = plain.t;
    out.unitary = plain.normalized.u_double;
    out.exact_unitary = plain.normalized.exact;
    out.radicand = plain.normalized.radicand;
  } else {
    // Solve the sign-twisted system for the three involutions exactly.
    std::vector<EquivarianceGen> gens;
    for (int c = 0; c < 3; ++c) {
      int e = derivation.involutions[c];
      gens.push_back({k_action.perm(e), h_action.perm(e), signs[c]});
    }
    auto basis = equivariant_basis(k_action.index, h_action.index, gens);
    auto t = select_invertible(basis);
    if (!t)
      throw TransplantError(
          "no invertible reflection-compatible transplantation exists", -1);
    out.t = *t;
    auto normalized = orthogonalize_intertwiner(*t);
    if (normalized) {
      out.unitary = normalized->u_double;
      out.exact_unitary = normalized->exact;
      out.radicand = normalized->radicand;
    } else {
      // Polar rescaling U = (T T^t)^{-1/2} T stays inside the intertwiner
      // space and is orthogonal in floating point.
      const int n = out.t.rows();
      Eigen::MatrixXd td(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) td(i, j) = out.t(i, j).to_double();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(td * td.transpose());
      Eigen::MatrixXd inv_sqrt = es.operatorInverseSqrt();
      Eigen::MatrixXd u = inv_sqrt * td;
      out.unitary.assign(n, std::vector<double>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.unitary[i][j] = u(i, j);
      out.exact_unitary = false;
      out.radicand = 0;
    }
  }

  // Reflection compatibility, color by color, exact.
  for (int c = 0; c < 3; ++c) {
    int e = derivation.involutions[c];
    if (!verify_signed_intertwining(out.t, h_action.perm(e), k_action.perm(e), signs[c]))
      throw TransplantError("transplantation incompatible with reflections of color " +
                                std::to_string(c),
                            c);
  }
  return out;
}

Piecewise to_piecewise(const Mesh& mesh, const AssembledSystem& sys,
                       const Eigen::VectorXd& free_values) {
  Piecewise f;
  f.level = mesh.level;
  f.per_node.reserve(mesh.node_vertices.size());
  for (const auto& verts : mesh.node_vertices) {
    Eigen::VectorXd v(verts.size());
    for (size_t r = 0; r < verts.size(); ++r) {
      const int fi = sys.global2free[verts[r]];
      v(r) = fi >= 0 ? free_values(fi) : 0.0;
    }
    f.per_node.push_back(std::move(v));
  }
  return f;
}

Piecewise apply(const Transplantation& t, const Piecewise& f) {
  const int n = (int)f.per_node.size();
  if (t.t.rows() != n || t.t.cols() != n)
    throw std::invalid_argument("transplantation size mismatch");
  Piecewise g;
  g.level = f.level;
  g.per_node.assign(n, Eigen::VectorXd::Zero(f.per_node[0].size()));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double w = t.unitary[j][i];
      if (w != 0.0) g.per_node[j] += w * f.per_node[i];
    }
  return g;
}

Gathered to_global(const Mesh& mesh, const Piecewise& f) {
  if (f.level != mesh.level) throw std::invalid_argument("refinement level mismatch");
  const int nv = mesh.vertex_count();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd cnt = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(nv, 1e300);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(nv, -1e300);
  for (size_t t = 0; t < mesh.node_vertices.size(); ++t) {
    const auto& verts = mesh.node_vertices[t];
    const auto& vals = f.per_node[t];
    for (size_t r = 0; r < verts.size(); ++r) {
      const int g = verts[r];
      sum(g) += vals(r);
      cnt(g) += 1.0;
      lo(g) = std::min(lo(g), vals(r));
      hi(g) = std::max(hi(g), vals(r));
    }
  }
  Gathered out;
  out.global = sum.cwiseQuotient(cnt);
  out.continuity_defect = (hi - lo).maxCoeff();
  return out;
}

Eigen::SparseMatrix<double> reference_mass(const BaseTriangle& base, int level) {
  PlanarDomain dom = unfold(GluingDiagram::single(), base, 0);
  Mesh mesh = refine(dom, level);
  return assemble(mesh, BCSpec::neumann()).B;
}

double piecewise_norm(const Piecewise& f, const Eigen::SparseMatrix<double>& ref_mass) {
  double total = 0.0;
  for (const auto& v : f.per_node) total += v.dot(ref_mass * v);
  return std::sqrt(total);
}

EigenWitness verify_eigen(const Mesh& mesh2, const AssembledSystem& sys2,
                          const Gathered& transplanted, double lambda) {
  (void)mesh2;
  EigenWitness w;
  w.continuity_defect = transplanted.continuity_defect;

  double trace = 0.0;
  for (int v : sys2.constrained)
    trace = std::max(trace, std::abs(transplanted.global(v)));
  w.boundary_trace = trace;

  Eigen::VectorXd x(sys2.n_free());
  for (int i = 0; i < sys2.n_free(); ++i) x(i) = transplanted.global(sys2.free2global[i]);

  Eigen::VectorXd ax = sys2.A * x;
  Eigen::VectorXd bx = sys2.B * x;
  const double rq = x.dot(ax) / x.dot(bx);
  if (std::abs(lambda) > 1e-7) {
    w.residual = (ax - lambda * bx).norm() / ax.norm();
    w.rayleigh_gap = std::abs(rq - lambda) / std::abs(lambda);
  } else {
    // Zero mode: ||A x|| itself vanishes, so report absolute quantities.
    w.residual = (ax - lambda * bx).norm() / x.norm();
    w.rayleigh_gap = std::abs(rq - lambda);
  }
  return w;
}

}  // namespace drums
