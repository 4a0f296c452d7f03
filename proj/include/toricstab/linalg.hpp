#pragma once

// Small dense exact linear algebra over Rational, plus the integer lattice
// utilities (primitive vectors, unimodular kernel bases) the boundary
// measure needs. Sizes are desk scale; plain Gaussian elimination is fine.

#include <optional>
#include <vector>

#include "toricstab/rational.hpp"

namespace toricstab {

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline Rational dot(const IVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline QVec sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

inline QVec add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

inline QVec scale(const Rational& c, const QVec& a) {
  QVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = c * a[j];
  return r;
}

inline QVec to_qvec(const IVec& a) {
  QVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = Rational(a[j]);
  return r;
}

// Row echelon form in place; returns rank. Columns are eliminated left to
// right with the first nonzero pivot in each column.
inline int row_reduce(QMat& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || m[k][c] == 0) continue;
      const Rational f = m[k][c];
      for (std::size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

inline int rank(QMat m) { return row_reduce(m); }

inline Rational determinant(QMat m) {
  const std::size_t nn = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < nn; ++c) {
    std::size_t p = c;
    while (p < nn && m[p][c] == 0) ++p;
    if (p == nn) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const Rational inv = Rational(1) / m[c][c];
    for (std::size_t k = c + 1; k < nn; ++k) {
      if (m[k][c] == 0) continue;
      const Rational f = m[k][c] * inv;
      for (std::size_t j = c; j < nn; ++j) m[k][j] -= f * m[c][j];
    }
  }
  return det;
}

// Solves the square system m x = b exactly; nullopt when m is singular.
inline std::optional<QVec> solve_linear(QMat m, QVec b) {
  const std::size_t nn = m.size();
  for (std::size_t r = 0; r < nn; ++r) m[r].push_back(b[r]);
  if (row_reduce(m) != static_cast<int>(nn)) {
    // Singular or inconsistent; distinguish via the augmented column.
    for (const auto& row : m) {
      bool zero = true;
      for (std::size_t j = 0; j < nn; ++j) zero = zero && row[j] == 0;
      if (zero && row[nn] != 0) return std::nullopt;
    }
    return std::nullopt;
  }
  QVec x(nn);
  for (std::size_t r = 0; r < nn; ++r) x[r] = m[r][nn];
  return x;
}

// One-dimensional kernel of an (r x c) matrix with rank c-1; nullopt when
// the rank differs. Used to pass a hyperplane through affinely independent
// points.
inline std::optional<QVec> kernel_vector(QMat m) {
  if (m.empty()) return std::nullopt;
  const std::size_t cols = m[0].size();
  const int rk = row_reduce(m);
  if (rk != static_cast<int>(cols) - 1) return std::nullopt;
  // Identify pivot columns.
  std::vector<int> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    if (m[r][c] == 1) {
      bool is_pivot = true;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (k != r && m[k][c] != 0) is_pivot = false;
      if (is_pivot) {
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
        continue;
      }
    }
  }
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) {
      free_col = c;
      break;
    }
  if (free_col == cols) return std::nullopt;
  QVec x(cols, Rational(0));
  x[free_col] = 1;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) x[c] = -m[pivot_of_col[c]][free_col];
  return x;
}

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Scales a rational vector to the unique primitive integer vector with the
// same direction.
inline IVec primitive(const QVec& v) {
  Int lcm = 1;
  for (const auto& q : v) lcm = lcm / gcd(lcm, denominator(q)) * denominator(q);
  IVec w(v.size());
  Int g = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    w[j] = numerator(v[j]) * (lcm / denominator(v[j]));
    g = gcd(g, w[j]);
  }
  if (g == 0) throw internal_error("primitive() of zero vector");
  for (auto& z : w) z /= g;
  return w;
}

inline IVec primitive(IVec w) {
  Int g = 0;
  for (const auto& z : w) g = gcd(g, z);
  if (g == 0) throw internal_error("primitive() of zero vector");
  for (auto& z : w) z /= g;
  return w;
}

// For a primitive integer vector nu, returns an n x n unimodular matrix
// whose first n-1 columns are a lattice basis of the kernel sublattice
// { y in Z^n : <nu, y> = 0 } and whose last column w has <nu, w> = 1.
// Column operations on the identity keep |det| = 1 throughout.
inline std::vector<IVec> unimodular_complement(const IVec& nu) {
  const std::size_t n = nu.size();
  std::vector<IVec> cols(n, IVec(n, Int(0)));
  IVec val(nu);
  for (std::size_t j = 0; j < n; ++j) cols[j][j] = 1;
  while (true) {
    // Pick the column with smallest nonzero |value|.
    std::size_t p = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (val[j] == 0) continue;
      if (p == n || boost::multiprecision::abs(val[j]) <
                        boost::multiprecision::abs(val[p]))
        p = j;
    }
    if (p == n) throw internal_error("unimodular_complement of zero vector");
    bool reduced_any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == p || val[j] == 0) continue;
      // Round-to-nearest quotient keeps coefficients small.
      Int q = val[j] / val[p];
      if (boost::multiprecision::abs(val[j] - q * val[p]) * 2 >
          boost::multiprecision::abs(val[p]))
        q += (val[j] * val[p] > 0) ? 1 : -1;
      if (q != 0) {
        val[j] -= q * val[p];
        for (std::size_t r = 0; r < n; ++r) cols[j][r] -= q * cols[p][r];
        reduced_any = true;
      }
      if (val[j] != 0) reduced_any = true;
    }
    if (!reduced_any) {
      // Exactly one nonzero entry remains; primitivity forces |val[p]| = 1.
      if (boost::multiprecision::abs(val[p]) != 1)
        throw internal_error("unimodular_complement: input not primitive");
      if (val[p] == -1)
        for (auto& z : cols[p]) z = -z;
      std::swap(cols[p], cols[n - 1]);
      return cols;
    }
  }
}

}  // namespace toricstab
