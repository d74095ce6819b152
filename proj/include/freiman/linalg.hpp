#pragma once

// Exact dense linear algebra over integer scalars (std::int64_t or Integer).
// Nothing here divides except where the quotient is known to be exact.

#include <utility>

#include <Eigen/Core>

#include "freiman/numeric.hpp"

namespace freiman {

/// Laplace expansion along the first row. Cheap for n <= 4.
template <typename Derived>
typename Derived::Scalar determinant_cofactor(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  eigen_assert(m.cols() == n);
  if (n == 0) return Scalar(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return Scalar(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  if (n == 3) {
    return Scalar(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                  m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
  }
  Scalar det(0);
  Mat<Scalar> minor(n - 1, n - 1);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (m(0, c) == Scalar(0)) continue;
    for (Eigen::Index i = 1; i < n; ++i) {
      for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
        if (j != c) minor(i - 1, jj++) = m(i, j);
      }
    }
    Scalar term = m(0, c) * determinant_cofactor(minor);
    if (c % 2 == 0) det += term; else det -= term;
  }
  return det;
}

/// Bareiss fraction-free elimination. Every intermediate entry is a minor of
/// the input, so the divisions are exact.
template <typename Derived>
typename Derived::Scalar determinant_bareiss(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = input.rows();
  eigen_assert(input.cols() == n);
  if (n == 0) return Scalar(1);
  Mat<Scalar> m = input;
  Scalar prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index p = k + 1;
      while (p < n && m(p, k) == Scalar(0)) ++p;
      if (p == n) return Scalar(0);
      m.row(k).swap(m.row(p));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = Scalar((m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev);
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  return negate ? Scalar(-det) : det;
}

template <typename Derived>
typename Derived::Scalar determinant_exact(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

/// Rank by fraction-free row reduction of a rectangular matrix.
template <typename Derived>
Eigen::Index rank_exact(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rank = 0;
  Scalar prev(1);
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index p = rank;
    while (p < rows && m(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != rank) m.row(rank).swap(m.row(p));
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        m(i, j) = Scalar((m(i, j) * m(rank, c) - m(i, c) * m(rank, j)) / prev);
      }
      m(i, c) = Scalar(0);
    }
    prev = m(rank, c);
    ++rank;
  }
  return rank;
}

/// For a (k-1) x k matrix, the vector of signed maximal minors
/// x_i = (-1)^i det(M without column i). It is orthogonal to every row and is
/// nonzero exactly when the rows are linearly independent.
template <typename Derived>
Vec<typename Derived::Scalar> signed_minors(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = m.cols();
  eigen_assert(m.rows() + 1 == k);
  Vec<Scalar> out(k);
  Mat<Scalar> minor(k - 1, k - 1);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index j = 0, jj = 0; j < k; ++j) {
      if (j != c) minor.col(jj++) = m.col(j);
    }
    Scalar d = determinant_exact(minor);
    out(c) = c % 2 == 0 ? d : Scalar(-d);
  }
  return out;
}

template <typename Scalar>
Scalar gcd_scalar(Scalar a, Scalar b) {
  if (a < Scalar(0)) a = -a;
  if (b < Scalar(0)) b = -b;
  while (b != Scalar(0)) {
    Scalar r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
template <typename Scalar>
Vec<Scalar> primitive(Vec<Scalar> v) {
  Scalar g(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd_scalar(g, v(i));
  if (g > Scalar(1)) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Scalar(v(i) / g);
  }
  return v;
}

}  // namespace freiman
