#include "drums/exact_linalg.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace drums {

RatMat RatMat::transpose() const {
  RatMat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("ratmat shape mismatch");
  RatMat m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& v = (*this)(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) m(i, j) += v * o(k, j);
    }
  return m;
}

RatMat RatMat::operator+(const RatMat& o) const {
  RatMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

RatMat RatMat::operator-(const RatMat& o) const {
  RatMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

RatMat RatMat::scaled(const Rational& s) const {
  RatMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

std::vector<Rational> RatMat::apply(const std::vector<Rational>& x) const {
  std::vector<Rational> y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

Rational RatMat::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  RatMat m = *this;
  Rational det(1);
  for (int c = 0; c < cols_; ++c) {
    int pivot = -1;
    for (int r = c; r < rows_; ++r)
      if (!m(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rational inv = Rational(1) / m(c, c);
    for (int r = c + 1; r < rows_; ++r) {
      if (m(r, c).is_zero()) continue;
      Rational f = m(r, c) * inv;
      for (int j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

double QuadExt::to_double() const {
  return a.to_double() + b.to_double() * std::sqrt((double)r);
}

static long long common_radicand(const QuadExt& x, const QuadExt& y) {
  if (x.b.is_zero()) return y.r;
  if (y.b.is_zero()) return x.r;
  if (x.r != y.r) throw std::invalid_argument("mixed quadratic radicands");
  return x.r;
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a + y.a, x.b + y.b, common_radicand(x, y));
}
QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a - y.a, x.b - y.b, common_radicand(x, y));
}
QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  long long r = common_radicand(x, y);
  return QuadExt(x.a * y.a + x.b * y.b * Rational(r), x.a * y.b + x.b * y.a, r);
}

QuadMat QuadMat::from(const RatMat& m) {
  QuadMat q(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) q(i, j) = QuadExt::rational(m(i, j));
  return q;
}

QuadMat QuadMat::transpose() const {
  QuadMat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

QuadMat QuadMat::operator*(const QuadMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("quadmat shape mismatch");
  QuadMat m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const QuadExt& v = (*this)(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) m(i, j) = m(i, j) + v * o(k, j);
    }
  return m;
}

QuadMat QuadMat::operator+(const QuadMat& o) const {
  QuadMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

QuadMat QuadMat::scaled(const QuadExt& s) const {
  QuadMat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

bool QuadMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const QuadExt& v = (*this)(i, j);
      if (i == j ? !(v == QuadExt::rational(Rational(1)))
                 : !v.is_zero())
        return false;
    }
  return true;
}

SqrtDecomp sqrt_decomp(const Rational& d) {
  if (d.sign() <= 0) throw std::domain_error("sqrt of non-positive rational");
  // sqrt(n/m) = sqrt(n*m)/m; factor n*m = s^2 * r with r squarefree.
  long long nm_n = d.num(), nm_m = d.den();
  __int128 prod = (__int128)nm_n * nm_m;
  long long s = 1, r = 1;
  for (long long p = 2; (__int128)p * p <= prod; ++p) {
    int e = 0;
    while (prod % p == 0) {
      prod /= p;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) s *= p;
    if (e % 2) r *= p;
  }
  if (prod > 1) r *= (long long)prod;
  SqrtDecomp out;
  out.coef = Rational(s, nm_m);
  out.radicand = r;
  return out;
}

std::vector<RatMat> equivariant_basis(int rows, int cols,
                                      const std::vector<EquivarianceGen>& gens) {
  const int n = rows * cols;
  // Signed union-find over matrix entries: parent plus sign relative to root.
  std::vector<int> parent(n), rel(n, +1);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> dead(n, 0);  // orbit forces entry to zero

  std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
    if (parent[x] == x) return {x, +1};
    auto [root, sign] = find(parent[x]);
    parent[x] = root;
    rel[x] *= sign;
    return {root, rel[x]};
  };
  auto unite = [&](int x, int y, int sign) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    if (rx == ry) {
      if (sx * sy != sign) dead[rx] = 1;  // entry identified with its negation
      return;
    }
    parent[ry] = rx;
    rel[ry] = sign * sx * sy;
  };

  for (const auto& g : gens) {
    for (int y = 0; y < rows; ++y)
      for (int x = 0; x < cols; ++x) {
        int yi = g.row(y), xi = g.col(x);
        int sign = 1;
        if (g.sign < 0) {
          if (yi == y) sign = -sign;
          if (xi == x) sign = -sign;
        }
        unite(y * cols + x, yi * cols + xi, sign);
      }
  }

  // Propagate dead flags to roots after all unions.
  for (int e = 0; e < n; ++e) {
    auto [root, sign] = find(e);
    if (dead[e]) dead[root] = 1;
    (void)sign;
  }

  std::vector<int> root_order;
  std::vector<int> root_slot(n, -1);
  for (int e = 0; e < n; ++e) {
    auto [root, sign] = find(e);
    (void)sign;
    if (dead[root]) continue;
    if (root_slot[root] < 0) {
      root_slot[root] = (int)root_order.size();
      root_order.push_back(root);
    }
  }

  std::vector<RatMat> basis(root_order.size(), RatMat(rows, cols));
  for (int e = 0; e < n; ++e) {
    auto [root, sign] = find(e);
    if (dead[root]) continue;
    basis[root_slot[root]](e / cols, e % cols) = Rational(sign);
  }
  return basis;
}

namespace {

bool proportional_to_identity(const RatMat& m, Rational* factor = nullptr) {
  if (m.rows() != m.cols()) return false;
  const Rational d = m(0, 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!((i == j ? d : Rational(0)) == m(i, j))) return false;
  if (factor) *factor = d;
  return true;
}

std::vector<std::vector<Rational>> coefficient_sequence(int dim, int radius) {
  // All nonzero integer vectors with entries in [-radius, radius], ordered by
  // max-norm shells and lexicographically within a shell.
  std::vector<std::vector<Rational>> out;
  std::vector<int> c(dim, 0);
  for (int shell = 1; shell <= radius; ++shell) {
    std::vector<int> vals;
    vals.push_back(0);
    for (int v = 1; v <= shell; ++v) {
      vals.push_back(v);
      vals.push_back(-v);
    }
    std::function<void(int, bool)> rec = [&](int pos, bool touched) {
      if (pos == dim) {
        if (!touched) return;
        std::vector<Rational> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = Rational(c[i]);
        out.push_back(std::move(v));
        return;
      }
      for (int v : vals) {
        c[pos] = v;
        rec(pos + 1, touched || std::abs(v) == shell);
      }
      c[pos] = 0;
    };
    rec(0, false);
  }
  return out;
}

RatMat combine(const std::vector<RatMat>& basis, const std::vector<Rational>& coeff) {
  RatMat t(basis[0].rows(), basis[0].cols());
  for (size_t i = 0; i < basis.size(); ++i)
    if (!coeff[i].is_zero()) t = t + basis[i].scaled(coeff[i]);
  return t;
}

}  // namespace

std::optional<RatMat> select_invertible(const std::vector<RatMat>& basis) {
  if (basis.empty()) return std::nullopt;
  auto seq = coefficient_sequence((int)basis.size(), 3);
  std::optional<RatMat> first_invertible;
  for (const auto& coeff : seq) {
    RatMat t = combine(basis, coeff);
    if (!t.is_invertible()) continue;
    if (proportional_to_identity(t * t.transpose())) return t;
    if (!first_invertible) first_invertible = t;
  }
  return first_invertible;
}

std::optional<Orthogonalized> orthogonalize_intertwiner(const RatMat& t) {
  const int n = t.rows();
  if (n != t.cols() || !t.is_invertible()) return std::nullopt;

  auto finish = [&](const QuadMat& u, long long radicand) -> std::optional<Orthogonalized> {
    Orthogonalized out;
    out.u = u;
    out.radicand = radicand;
    out.exact = (u * u.transpose()).is_identity();
    if (!out.exact) return std::nullopt;
    out.u_double.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.u_double[i][j] = u(i, j).to_double();
    return out;
  };

  // Case 1: T T^t = d I already.
  RatMat tt = t * t.transpose();
  Rational d;
  if (proportional_to_identity(tt, &d)) {
    SqrtDecomp s = sqrt_decomp(d);  // sqrt(d) = coef * sqrt(r)
    // 1/sqrt(d) = sqrt(r) / (coef * r)
    QuadExt inv_sqrt(Rational(0), Rational(1) / (s.coef * Rational(s.radicand)), s.radicand);
    return finish(QuadMat::from(t).scaled(inv_sqrt), s.radicand);
  }

  // Case 2: T T^t = c I + b u u^t for a sign vector u (the all-ones case
  // J = u u^t included). Rescaling the two eigenspaces of T T^t separately,
  // U = (P/sqrt(c + b n) + (I - P)/sqrt(c)) T with P = u u^t / n, is unitary;
  // it stays exact when the two square roots live in one quadratic extension.
  if (tt(0, 1).is_zero()) return std::nullopt;
  // With u[0] fixed to +1 the sign of b is not determined by tt(0,1) alone.
  Rational b, c, cbn;
  std::vector<Rational> u(n);
  bool matched = false;
  for (int bsign : {+1, -1}) {
    b = Rational(bsign) * tt(0, 1).abs();
    u[0] = Rational(1);
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) {
      Rational q = tt(0, i) / b;
      if (!(q == Rational(1)) && !(q == Rational(-1))) ok = false;
      u[i] = q;
    }
    if (!ok) continue;
    c = tt(0, 0) - b;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        Rational expect = (i == j) ? c + b : b * u[i] * u[j];
        if (!(tt(i, j) == expect)) ok = false;
      }
    cbn = c + b * Rational(n);
    if (ok && c.sign() > 0 && cbn.sign() > 0) {
      matched = true;
      break;
    }
  }
  if (!matched) return std::nullopt;

  SqrtDecomp sc = sqrt_decomp(c);
  SqrtDecomp scb = sqrt_decomp(cbn);
  if (sc.radicand != 1 && scb.radicand != 1 && sc.radicand != scb.radicand)
    return std::nullopt;
  const long long rad = sc.radicand != 1 ? sc.radicand : scb.radicand;
  auto inv_sqrt = [rad](const SqrtDecomp& s) {
    if (s.radicand == 1) return QuadExt(Rational(1) / s.coef, Rational(0), rad);
    return QuadExt(Rational(0), Rational(1) / (s.coef * Rational(s.radicand)), rad);
  };

  RatMat p(n, n);  // u u^t / n
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = u[i] * u[j] / Rational(n);
  QuadMat scale = QuadMat::from(p).scaled(inv_sqrt(scb)) +
                  QuadMat::from(RatMat::identity(n) - p).scaled(inv_sqrt(sc));
  return finish(scale * QuadMat::from(t), rad);
}

}  // namespace drums
