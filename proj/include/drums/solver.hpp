#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "drums/assemble.hpp"

namespace drums {

struct SolveOptions {
  int k = 10;
  double tol = 1e-8;      // relative residual target
  uint64_t seed = 1234;   // starting-vector seed
  double sigma = -1.0;    // shift; keep below the spectrum so A - sigma B is SPD
  int max_basis = 0;      // 0 = automatic budget
};

/// Ascending generalized eigenvalues of A x = lambda B x with their
/// eigenvectors (columns, in the free-vertex basis).
///
/// residual[i] is ||A x - lambda B x|| / ||A x||, except for a numerically
/// zero eigenvalue (Neumann constant mode) where ||A x|| itself vanishes and
/// the backward error ||A x - lambda B x|| / (||A||_1 ||x||) is reported.
struct Spectrum {
  std::vector<double> lambda;
  std::vector<double> residual;
  int level = -1;
  std::string bc;
  Eigen::MatrixXd vectors;

  int count() const { return (int)lambda.size(); }
};

class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& what, Spectrum partial_)
      : std::runtime_error(what), partial(std::move(partial_)) {}
  Spectrum partial;
};

/// Shift-invert Lanczos with full reorthogonalization in the B inner product
/// on (A - sigma B)^{-1} B. Deterministic for a fixed seed. Throws
/// SolverFailure carrying the converged prefix if the basis budget runs out.
Spectrum solve_lowest(const AssembledSystem& sys, const SolveOptions& opt);

/// Same solver against an ordinary eigenproblem (B = identity).
Spectrum solve_lowest_standard(const Eigen::SparseMatrix<double>& a,
                               const SolveOptions& opt);

/// CSV rows "index,lambda,residual,level,bc".
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out);

}  // namespace drums
