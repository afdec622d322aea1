#include "drums/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace drums {

std::vector<ExtrapolatedValue> extrapolate(const std::vector<double>& coarse,
                                           const std::vector<double>& mid,
                                           const std::vector<double>& fine) {
  if (coarse.size() != mid.size() || mid.size() != fine.size())
    throw std::invalid_argument("extrapolation inputs must have equal length");

  std::vector<ExtrapolatedValue> out(fine.size());
  for (size_t i = 0; i < fine.size(); ++i) {
    const double d1 = coarse[i] - mid[i];
    const double d2 = mid[i] - fine[i];
    const double noise = 1e-11 * std::max(1.0, std::abs(fine[i]));
    ExtrapolatedValue v;
    if (std::abs(d2) <= noise || std::abs(d1) <= noise || d1 * d2 <= 0.0 ||
        d1 / d2 <= 1.05) {
      v.limit = fine[i];
      v.flagged = true;
    } else {
      const double ratio = d1 / d2;          // = 2^p
      v.order = std::log2(ratio);
      v.limit = fine[i] + (fine[i] - mid[i]) / (ratio - 1.0);
    }
    out[i] = v;
  }
  return out;
}

WeylFit weyl_fit(const std::vector<double>& lambdas, double area, double perimeter) {
  (void)perimeter;
  std::vector<double> lam;
  for (double l : lambdas)
    if (l > 1e-9) lam.push_back(l);
  if (lam.size() < 50)
    throw std::invalid_argument("weyl fit needs at least 50 converged eigenvalues");

  Eigen::MatrixXd design((int)lam.size(), 2);
  Eigen::VectorXd target((int)lam.size());
  for (int i = 0; i < (int)lam.size(); ++i) {
    design(i, 0) = lam[i];
    design(i, 1) = std::sqrt(lam[i]);
    target(i) = i + 1.0;  // N(lambda_i), eigenvalues sorted ascending
  }
  Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);

  WeylFit fit;
  fit.slope = coef(0);
  fit.boundary_coef = coef(1);
  fit.count = (int)lam.size();
  fit.slope_expected = area / (4.0 * M_PI);
  return fit;
}

SpectrumComparison compare_values(const std::vector<double>& v1,
                                  const std::vector<double>& v2) {
  if (v1.size() != v2.size()) throw std::invalid_argument("value lists differ in length");
  SpectrumComparison cmp;
  for (size_t i = 0; i < v1.size(); ++i) {
    cmp.rel_diff.push_back(std::abs(v1[i] - v2[i]) / std::abs(v1[i]));
    cmp.max_rel_diff = std::max(cmp.max_rel_diff, cmp.rel_diff.back());
  }
  return cmp;
}

SpectrumComparison compare_spectra(const Spectrum& s1, const Spectrum& s2, int count,
                                   bool skip_zero_mode) {
  if (s1.bc != s2.bc)
    throw std::invalid_argument("comparing spectra with different boundary conditions");

  int off = 0;
  SpectrumComparison cmp;
  if (skip_zero_mode) {
    // Both spectra share the zero mode; verify and skip it.
    if (s1.count() > 0 && std::abs(s1.lambda[0]) < 1e-6 &&
        s2.count() > 0 && std::abs(s2.lambda[0]) < 1e-6) {
      off = 1;
      cmp.skipped_zero_modes = 1;
    }
  }
  if (off + count > s1.count() || off + count > s2.count())
    throw std::invalid_argument("not enough eigenvalues for comparison");

  for (int i = 0; i < count; ++i) {
    const double a = s1.lambda[off + i];
    const double b = s2.lambda[off + i];
    cmp.rel_diff.push_back(std::abs(a - b) / std::abs(a));
    cmp.max_rel_diff = std::max(cmp.max_rel_diff, cmp.rel_diff.back());
  }
  return cmp;
}

}  // namespace drums
