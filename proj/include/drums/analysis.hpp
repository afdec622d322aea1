#pragma once

#include <vector>

#include "drums/solver.hpp"

namespace drums {

/// Richardson extrapolation from three consecutive refinement levels with an
/// empirically fitted order. Falls back to the finest value (flagged) when
/// the level differences are below the noise floor or non-monotone.
struct ExtrapolatedValue {
  double limit = 0.0;
  double order = 0.0;  // observed convergence order p
  bool flagged = false;
};

std::vector<ExtrapolatedValue> extrapolate(const std::vector<double>& coarse,
                                           const std::vector<double>& mid,
                                           const std::vector<double>& fine);

/// Least-squares fit of the eigenvalue counting function N(lambda) against
/// a*lambda + b*sqrt(lambda). Numerically zero eigenvalues are skipped.
/// Requires at least 50 usable eigenvalues.
struct WeylFit {
  double slope = 0.0;          // compare against area / (4 pi)
  double boundary_coef = 0.0;  // sign differs between Dirichlet and Neumann
  int count = 0;
  double slope_expected = 0.0;
};

WeylFit weyl_fit(const std::vector<double>& lambdas, double area, double perimeter);

/// Per-index relative differences between two sorted spectra.
struct SpectrumComparison {
  std::vector<double> rel_diff;
  double max_rel_diff = 0.0;
  int skipped_zero_modes = 0;
};

SpectrumComparison compare_spectra(const Spectrum& s1, const Spectrum& s2, int count,
                                   bool skip_zero_mode);

/// Same per-index comparison on plain value lists (e.g. extrapolated limits).
SpectrumComparison compare_values(const std::vector<double>& v1,
                                  const std::vector<double>& v2);

}  // namespace drums
