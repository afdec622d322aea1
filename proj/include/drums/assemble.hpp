#pragma once

#include <map>
#include <string>

#include <Eigen/Sparse>

#include "drums/mesh.hpp"

namespace drums {

enum class BCKind { Dirichlet, Neumann };

struct BCSpec {
  enum class Mode { Dirichlet, Neumann, Mixed };
  Mode mode = Mode::Dirichlet;
  std::map<int, BCKind> per_color;  // consulted in Mixed mode only

  static BCSpec dirichlet() { return {Mode::Dirichlet, {}}; }
  static BCSpec neumann() { return {Mode::Neumann, {}}; }
  static BCSpec mixed(std::map<int, BCKind> map) { return {Mode::Mixed, std::move(map)}; }

  std::string name() const {
    switch (mode) {
      case Mode::Dirichlet: return "dirichlet";
      case Mode::Neumann: return "neumann";
      default: return "mixed";
    }
  }
};

/// P1 stiffness/mass pair on the free vertices. Exact per-element integration
/// (no quadrature); Dirichlet vertices are eliminated from the free set,
/// Neumann edges contribute nothing.
struct AssembledSystem {
  Eigen::SparseMatrix<double> A;  // stiffness, symmetric positive semidefinite
  Eigen::SparseMatrix<double> B;  // mass, symmetric positive definite
  std::vector<int> free2global;
  std::vector<int> global2free;   // -1 for constrained vertices
  std::vector<int> constrained;   // Dirichlet vertex ids, sorted
  int n_global = 0;

  int n_free() const { return (int)free2global.size(); }
};

/// Throws std::invalid_argument when a Mixed spec leaves a boundary color
/// present in the mesh unassigned.
AssembledSystem assemble(const Mesh& mesh, const BCSpec& bc);

}  // namespace drums
