#pragma once

#include <optional>
#include <vector>

#include "drums/perm.hpp"
#include "drums/rational.hpp"

namespace drums {

/// Small dense matrix over the rationals. Row-major, square or rectangular.
class RatMat {
public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }
  static RatMat ones(int rows, int cols) {
    RatMat m(rows, cols);
    for (auto& v : m.a_) v = Rational(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  RatMat transpose() const;
  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat scaled(const Rational& s) const;
  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  Rational determinant() const;  // Gaussian elimination, exact
  bool is_invertible() const { return rows_ == cols_ && !determinant().is_zero(); }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Element of the quadratic extension Q(sqrt(r)): value a + b*sqrt(r).
/// r is a nonnegative integer radicand; r == 1 values are normalized to
/// have b == 0. Mixing distinct radicands throws.
struct QuadExt {
  Rational a, b;
  long long r = 1;

  QuadExt() = default;
  QuadExt(Rational a_, Rational b_, long long r_) : a(a_), b(b_), r(r_) { normalize(); }
  static QuadExt rational(const Rational& v) { return QuadExt(v, Rational(0), 1); }

  void normalize() {
    if (r == 1) {
      a += b;
      b = Rational(0);
    }
    if (b.is_zero()) r = 1;
  }
  double to_double() const;
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a == y.a && x.b == y.b && (x.b.is_zero() || x.r == y.r);
  }
};

/// Dense matrix over Q(sqrt(r)).
class QuadMat {
public:
  QuadMat() = default;
  QuadMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static QuadMat from(const RatMat& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  QuadExt& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const QuadExt& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  QuadMat transpose() const;
  QuadMat operator*(const QuadMat& o) const;
  QuadMat operator+(const QuadMat& o) const;
  QuadMat scaled(const QuadExt& s) const;
  bool is_identity() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<QuadExt> a_;
};

/// sqrt(d) for positive rational d, written as coef * sqrt(radicand) with
/// rational coef and squarefree integer radicand.
struct SqrtDecomp {
  Rational coef;
  long long radicand = 1;
};
SqrtDecomp sqrt_decomp(const Rational& d);

/// One generator constraint for an equivariance system: T must satisfy
/// T[row(y), col(x)] relations induced by simultaneous permutation of rows by
/// `row` and columns by `col`, with a sign flip of `sign` at fixed points of
/// either side (sign = +1 gives the plain intertwining equations).
struct EquivarianceGen {
  Perm row;  // permutation of row indices
  Perm col;  // permutation of column indices
  int sign = +1;
};

/// Basis of the space of matrices T with T * rho_col(g) = sigma_row(g) * T for
/// every generator, where sigma carries the generator's sign at fixed points.
/// Computed by signed orbit closure on entries; entries whose orbit forces
/// T[e] = -T[e] are zero in every solution.
std::vector<RatMat> equivariant_basis(int rows, int cols,
                                      const std::vector<EquivarianceGen>& gens);

/// First invertible small integer combination of the basis, scanning a
/// deterministic sequence of coefficient vectors. Combinations whose product
/// with their transpose is an exact multiple of the identity are preferred.
std::optional<RatMat> select_invertible(const std::vector<RatMat>& basis);

/// Result of normalizing an intertwiner toward orthogonality.
struct Orthogonalized {
  QuadMat u;           // exact unitary element of Q(sqrt(radicand))^{n x n}
  long long radicand;  // 1 when the unitary matrix is rational
  bool exact = false;  // true when u * u^t == I holds exactly
  std::vector<std::vector<double>> u_double;
};

/// Rescales T within its intertwiner space so that U * U^t = I.
/// Handles two exact cases: T * T^t already proportional to the identity, and
/// the transitive-permutation split T = (trivial part) + (complement part)
/// with the complement satisfying W * W^t = d * (I - J/n). Returns nullopt if
/// neither applies.
std::optional<Orthogonalized> orthogonalize_intertwiner(const RatMat& t);

}  // namespace drums
