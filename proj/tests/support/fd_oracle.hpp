#pragma once

// Test-only oracle: 5-point finite-difference Dirichlet Laplacian on the
// lattice points strictly inside a polygon. Independent of the finite element
// path; shares only the generic sparse eigensolver, which is itself verified
// against closed-form spectra.

#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "drums/geometry.hpp"
#include "drums/solver.hpp"

namespace drums::testsupport {

struct FdGrid {
  int denom = 0;  // grid step h = 1/denom
  std::vector<std::pair<int, int>> points;
  Eigen::SparseMatrix<double> laplacian;  // scaled by 1/h^2, SPD
};

/// Builds the Dirichlet 5-point operator for step 1/denom on points strictly
/// inside the polygon. Neighbors outside the interior contribute nothing
/// (value pinned to zero on and beyond the boundary).
inline FdGrid fd_dirichlet_grid(const std::vector<Vec2r>& polygon, int denom) {
  FdGrid grid;
  grid.denom = denom;

  Rational minx = polygon[0].x, maxx = polygon[0].x;
  Rational miny = polygon[0].y, maxy = polygon[0].y;
  for (const auto& p : polygon) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const long long ix0 = (long long)std::floor(minx.to_double() * denom) - 1;
  const long long ix1 = (long long)std::ceil(maxx.to_double() * denom) + 1;
  const long long iy0 = (long long)std::floor(miny.to_double() * denom) - 1;
  const long long iy1 = (long long)std::ceil(maxy.to_double() * denom) + 1;

  std::map<std::pair<int, int>, int> index;
  for (long long j = iy0; j <= iy1; ++j)
    for (long long i = ix0; i <= ix1; ++i) {
      Vec2r p{Rational(i, denom), Rational(j, denom)};
      if (strictly_inside_polygon(polygon, p)) {
        index[{(int)i, (int)j}] = (int)grid.points.size();
        grid.points.push_back({(int)i, (int)j});
      }
    }

  const double inv_h2 = (double)denom * (double)denom;
  std::vector<Eigen::Triplet<double>> trips;
  const int n = (int)grid.points.size();
  for (int r = 0; r < n; ++r) {
    auto [i, j] = grid.points[r];
    trips.emplace_back(r, r, 4.0 * inv_h2);
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      auto it = index.find({i + di, j + dj});
      if (it != index.end()) trips.emplace_back(r, it->second, -inv_h2);
    }
  }
  grid.laplacian.resize(n, n);
  grid.laplacian.setFromTriplets(trips.begin(), trips.end());
  return grid;
}

inline double fd_dirichlet_lambda1(const std::vector<Vec2r>& polygon, int denom,
                                   uint64_t seed = 1234) {
  FdGrid grid = fd_dirichlet_grid(polygon, denom);
  SolveOptions opt;
  opt.k = 1;
  opt.tol = 1e-10;
  opt.seed = seed;
  opt.sigma = -1.0;
  return solve_lowest_standard(grid.laplacian, opt).lambda[0];
}

}  // namespace drums::testsupport
