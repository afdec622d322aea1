#include "drums/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <Eigen/SparseCholesky>

namespace drums {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double norm1(const SpMat& m) {
  double best = 0.0;
  for (int c = 0; c < m.outerSize(); ++c) {
    double s = 0.0;
    for (SpMat::InnerIterator it(m, c); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

struct RitzCheck {
  Vec values;       // ascending lambda
  Mat vectors;      // corresponding columns
  std::vector<double> residuals;
  bool converged = false;
};

// Explicit residuals for the lowest Ritz pairs of the current basis.
RitzCheck check_ritz(const SpMat& a, const SpMat& b, double sigma, const Mat& v,
                     const Vec& alpha, const Vec& beta, int j, int k_requested,
                     double tol, double a_norm1, double b_norm1) {
  Eigen::SelfAdjointEigenSolver<Mat> es;
  Mat t = Mat::Zero(j, j);
  for (int i = 0; i < j; ++i) {
    t(i, i) = alpha(i);
    if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta(i);
  }
  es.compute(t);

  // Largest theta of the shift-inverted operator <-> smallest lambda.
  const int k = std::min(k_requested, j);
  RitzCheck out;
  out.values.resize(k);
  out.vectors.resize(v.rows(), k);
  out.residuals.assign(k, 0.0);
  out.converged = (k == k_requested);
  for (int i = 0; i < k; ++i) {
    const int col = j - 1 - i;  // eigenvalues ascending in theta
    const double theta = es.eigenvalues()(col);
    const double lam = sigma + 1.0 / theta;
    Vec x = v.leftCols(j) * es.eigenvectors().col(col);
    Vec ax = a * x;
    Vec r = ax - lam * (b * x);
    const double xnorm = x.norm();
    const double zero_floor = 1e-9 * (a_norm1 / b_norm1);
    double res;
    if (std::abs(lam) > zero_floor)
      res = r.norm() / ax.norm();
    else
      res = r.norm() / (a_norm1 * xnorm);
    out.values(i) = lam;
    out.vectors.col(i) = x;
    out.residuals[i] = res;
    if (res > tol) out.converged = false;
  }
  if (k == 0) return out;
  // Sort ascending by lambda (theta order already gives ascending lambda,
  // but keep it explicit for safety with clustered values).
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int p, int q) { return out.values(p) < out.values(q); });
  Vec sv(k);
  Mat sm(v.rows(), k);
  std::vector<double> sr(k);
  for (int i = 0; i < k; ++i) {
    sv(i) = out.values(idx[i]);
    sm.col(i) = out.vectors.col(idx[i]);
    sr[i] = out.residuals[idx[i]];
  }
  out.values = sv;
  out.vectors = sm;
  out.residuals = sr;
  return out;
}

Spectrum solve_pair(const SpMat& a, const SpMat& b, const SolveOptions& opt) {
  const int n = (int)a.rows();
  if (opt.k < 1) throw std::invalid_argument("eigenvalue count must be >= 1");
  if (opt.k > n)
    throw std::invalid_argument("requested more eigenpairs than free vertices");

  const double a_norm1 = norm1(a);
  const double b_norm1 = norm1(b);

  SpMat shifted = a - opt.sigma * b;
  Eigen::SimplicialLDLT<SpMat> factor(shifted);
  if (factor.info() != Eigen::Success)
    throw std::runtime_error("factorization of shifted operator failed");

  const int budget =
      std::min(n, opt.max_basis > 0 ? opt.max_basis : std::max(6 * opt.k + 100, 300));
  int m = std::min({n, std::max(2 * opt.k + 40, 80), budget});

  Mat v(n, m);
  Mat bv(n, m);  // cached B * v_j
  Vec alpha = Vec::Zero(budget), beta = Vec::Zero(budget);

  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vec w(n);
  for (int i = 0; i < n; ++i) w(i) = uni(rng);
  {
    Vec bw = b * w;
    w /= std::sqrt(w.dot(bw));
  }
  v.col(0) = w;
  bv.col(0) = b * w;

  int j = 0;
  RitzCheck best;
  while (true) {
    // One Lanczos step: w = (A - sigma B)^{-1} B v_j.
    w = factor.solve(bv.col(j));
    alpha(j) = w.dot(bv.col(j));
    w -= alpha(j) * v.col(j);
    if (j > 0) w -= beta(j - 1) * v.col(j - 1);
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      Vec h = bv.leftCols(j + 1).transpose() * w;
      w -= v.leftCols(j + 1) * h;
    }
    Vec bw = b * w;
    double nb = std::sqrt(std::max(w.dot(bw), 0.0));
    ++j;

    const bool basis_full = (j >= m);
    const bool time_to_check = basis_full || (j >= 2 * opt.k + 10 && j % 10 == 0);
    if (time_to_check && j >= opt.k) {
      best = check_ritz(a, b, opt.sigma, v, alpha, beta, j, opt.k, opt.tol, a_norm1,
                        b_norm1);
      if (best.converged) break;
    }

    if (j >= budget || j >= n) {
      if (best.residuals.empty())
        best = check_ritz(a, b, opt.sigma, v, alpha, beta, j, opt.k, opt.tol, a_norm1,
                          b_norm1);
      if (best.converged) break;
      Spectrum partial;
      for (int i = 0; i < (int)best.residuals.size(); ++i) {
        if (best.residuals[i] > opt.tol) break;
        partial.lambda.push_back(best.values(i));
        partial.residual.push_back(best.residuals[i]);
      }
      partial.vectors = best.vectors.leftCols((int)partial.lambda.size());
      throw SolverFailure("eigensolver iteration budget exhausted", std::move(partial));
    }

    if (basis_full) {
      // Grow the basis and continue.
      m = std::min({n, budget, std::max(m + m / 2, m + 10)});
      v.conservativeResize(Eigen::NoChange, m);
      bv.conservativeResize(Eigen::NoChange, m);
    }

    if (nb < 1e-13) {
      // Invariant subspace hit; restart with a fresh orthogonalized vector.
      for (int i = 0; i < n; ++i) w(i) = uni(rng);
      for (int pass = 0; pass < 2; ++pass) {
        Vec h = bv.leftCols(j).transpose() * w;
        w -= v.leftCols(j) * h;
      }
      bw = b * w;
      nb = std::sqrt(std::max(w.dot(bw), 0.0));
      beta(j - 1) = 0.0;
      if (nb < 1e-13) {
        best = check_ritz(a, b, opt.sigma, v, alpha, beta, j, opt.k, opt.tol, a_norm1,
                          b_norm1);
        break;  // space exhausted
      }
    } else {
      beta(j - 1) = nb;
    }
    v.col(j) = w / nb;
    bv.col(j) = bw / nb;
  }

  if (!best.converged) {
    Spectrum partial;
    for (int i = 0; i < opt.k && i < (int)best.residuals.size(); ++i) {
      if (best.residuals[i] > opt.tol) break;
      partial.lambda.push_back(best.values(i));
      partial.residual.push_back(best.residuals[i]);
    }
    partial.vectors = best.vectors.leftCols((int)partial.lambda.size());
    throw SolverFailure("eigensolver failed to converge", std::move(partial));
  }

  Spectrum out;
  out.lambda.assign(best.values.data(), best.values.data() + opt.k);
  out.residual = best.residuals;
  out.vectors = best.vectors;
  return out;
}

}  // namespace

Spectrum solve_lowest(const AssembledSystem& sys, const SolveOptions& opt) {
  return solve_pair(sys.A, sys.B, opt);
}

Spectrum solve_lowest_standard(const SpMat& a, const SolveOptions& opt) {
  SpMat id(a.rows(), a.cols());
  id.setIdentity();
  return solve_pair(a, id, opt);
}

void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out) {
  out << "index,lambda,residual,level,bc\n";
  char buf[160];
  for (int i = 0; i < spectrum.count(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.3e,%d,%s\n", i, spectrum.lambda[i],
                  spectrum.residual[i], spectrum.level, spectrum.bc.c_str());
    out << buf;
  }
}

}  // namespace drums
