#pragma once

#include <array>

#include "json.hpp"

#include "drums/assemble.hpp"
#include "drums/exact_linalg.hpp"
#include "drums/gassmann.hpp"
#include "drums/mesh.hpp"
#include "drums/solver.hpp"
#include "drums/unfolding.hpp"

namespace drums {

/// Triangle-wise linear map carrying functions on drum 1 to functions on
/// drum 2. Row/column index = diagram node = coset index. The matrix must
/// commute with the edge-reflection structure of the three gluing
/// involutions; under Dirichlet conditions a reflection across an open edge
/// extends a function oddly, so the compatible matrix solves the
/// sign-twisted intertwining equations (fixed nodes carry a -1). Neumann
/// reflections are even and the plain coset intertwiner applies.
struct Transplantation {
  RatMat t;                        // exact, invertible
  std::vector<std::vector<double>> unitary;  // rescaled so U U^t = I
  bool exact_unitary = false;
  long long radicand = 1;
  std::array<int, 3> signs{1, 1, 1};  // per color: +1 even, -1 odd reflection
  std::array<int, 3> involutions{};
};

class TransplantError : public std::runtime_error {
public:
  TransplantError(const std::string& what, int color)
      : std::runtime_error(what), violating_color(color) {}
  int violating_color;
};

/// Signs per color from a boundary spec: -1 where the open edges of that
/// color carry Dirichlet conditions, +1 for Neumann.
std::array<int, 3> reflection_signs(const BCSpec& bc);

/// Builds the transplantation compatible with the given per-color signs.
/// With all-plus signs the provided coset intertwiner is used directly;
/// otherwise the sign-twisted system for the three involutions is solved
/// exactly. Verifies the (signed) intertwining identity color by color and
/// throws TransplantError naming the first violating color on failure.
Transplantation build_transplantation(const Intertwiner& plain,
                                      const DiagramDerivation& derivation,
                                      const CosetAction& h_action,
                                      const CosetAction& k_action,
                                      const std::array<int, 3>& signs);

/// Checks T * sigma_H(g_c) == sigma_K(g_c) * T exactly, where sigma carries
/// sign_c at the fixed points of involution c.
bool verify_signed_intertwining(const RatMat& t, const Perm& h_perm, const Perm& k_perm,
                                int sign);

/// Per-base-triangle restriction of a vertex function on the matched
/// reference refinement; index = diagram node, values in reference order.
struct Piecewise {
  int level = 0;
  std::vector<Eigen::VectorXd> per_node;
};

/// Restriction of a global vertex vector (free dofs expanded by zeros on
/// constrained vertices) to per-triangle reference stacks.
Piecewise to_piecewise(const Mesh& mesh, const AssembledSystem& sys,
                       const Eigen::VectorXd& free_values);

/// (T f)|node j = sum_i T[j,i] f|node i, through the reference identification.
Piecewise apply(const Transplantation& t, const Piecewise& f);

/// Gathers a piecewise function into a global vertex vector by averaging the
/// per-triangle values at shared vertices; the maximum disagreement across
/// contributions is reported as the continuity defect.
struct Gathered {
  Eigen::VectorXd global;
  double continuity_defect = 0.0;
};
Gathered to_global(const Mesh& mesh, const Piecewise& f);

/// Mass-weighted norm of a piecewise function (all placed triangles are
/// congruent, so one reference mass matrix serves every node).
double piecewise_norm(const Piecewise& f, const Eigen::SparseMatrix<double>& ref_mass);

/// P1 mass matrix of one placed triangle refined to the given level.
Eigen::SparseMatrix<double> reference_mass(const BaseTriangle& base, int level);

/// Residual report for a transplanted candidate eigenfunction on drum 2.
struct EigenWitness {
  double residual = 0.0;        // ||A x - lambda B x|| / ||A x||
  double rayleigh_gap = 0.0;    // |x'Ax / x'Bx - lambda| / lambda
  double boundary_trace = 0.0;  // max |value| at constrained vertices
  double continuity_defect = 0.0;
};

EigenWitness verify_eigen(const Mesh& mesh2, const AssembledSystem& sys2,
                          const Gathered& transplanted, double lambda);

}  // namespace drums
