#pragma once

#include "defcat/scalar.hpp"

#include <optional>
#include <vector>

namespace defcat {

// Exact dense linear algebra over a field scalar K (Fp or Rat).  All
// routines are deterministic: pivots are the first nonzero entry in
// column order, no magnitude-based pivoting.

// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<int> rref_in_place(Mat<K>& a) {
  const int rows = (int)a.rows(), cols = (int)a.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    K inv = K(1) / a(r, c);
    for (int j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      K f = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
int rank_of(Mat<K> a) {
  return (int)rref_in_place(a).size();
}

// Columns form a basis of ker(a).
template <class K>
Mat<K> kernel_basis(Mat<K> a) {
  const int cols = (int)a.cols();
  std::vector<int> pivots = rref_in_place(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat<K> ker = Mat<K>::Zero(cols, cols - (int)pivots.size());
  int kcol = 0;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    ker(c, kcol) = K(1);
    for (int pi = 0; pi < (int)pivots.size(); ++pi) ker(pivots[pi], kcol) = -a(pi, c);
    ++kcol;
  }
  return ker;
}

// Columns of the result are the pivot columns of a (a basis of im(a)).
template <class K>
Mat<K> column_space_basis(const Mat<K>& a) {
  Mat<K> r = a;
  std::vector<int> pivots = rref_in_place(r);
  Mat<K> basis(a.rows(), (int)pivots.size());
  for (int i = 0; i < (int)pivots.size(); ++i) basis.col(i) = a.col(pivots[i]);
  return basis;
}

// Solve a x = b for every column of b; nullopt when inconsistent.
template <class K>
std::optional<Mat<K>> solve(const Mat<K>& a, const Mat<K>& b) {
  const int rows = (int)a.rows(), cols = (int)a.cols(), rhs = (int)b.cols();
  Mat<K> aug(rows, cols + rhs);
  aug.leftCols(cols) = a;
  aug.rightCols(rhs) = b;
  std::vector<int> pivots = rref_in_place(aug);
  for (int c : pivots)
    if (c >= cols) return std::nullopt;
  Mat<K> x = Mat<K>::Zero(cols, rhs);
  for (int i = 0; i < (int)pivots.size(); ++i) x.row(pivots[i]) = aug.block(i, cols, 1, rhs);
  return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve<K>(a, Mat<K>::Identity(a.rows(), a.rows()));
  if (!x) return std::nullopt;
  // solve() only guarantees a right inverse for square singular inputs
  if (rank_of<K>(a) != (int)a.rows()) return std::nullopt;
  return x;
}

template <class K>
bool in_column_space(const Mat<K>& basis, const Vec<K>& v) {
  return solve<K>(basis, Mat<K>(v)).has_value();
}

template <class K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> r(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  r.setZero();
  r.block(0, 0, a.rows(), a.cols()) = a;
  r.block(0, a.cols(), b.rows(), b.cols()) = b;
  return r;
}

template <class K>
Mat<K> vstack(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> r(a.rows() + b.rows(), std::max(a.cols(), b.cols()));
  r.setZero();
  r.block(0, 0, a.rows(), a.cols()) = a;
  r.block(a.rows(), 0, b.rows(), b.cols()) = b;
  return r;
}

// Basis of a complement of span(w) in k^n: the standard basis vectors whose
// indices are the non-pivot rows after reducing [w | I].
template <class K>
Mat<K> complement_basis(const Mat<K>& w, int n) {
  Mat<K> aug = hstack<K>(w, Mat<K>::Identity(n, n));
  std::vector<int> pivots = rref_in_place(aug);
  std::vector<int> extra;
  for (int c : pivots)
    if (c >= (int)w.cols()) extra.push_back(c - (int)w.cols());
  Mat<K> basis = Mat<K>::Zero(n, (int)extra.size());
  for (int i = 0; i < (int)extra.size(); ++i) basis(extra[i], i) = K(1);
  return basis;
}

// Intersection of two column spaces.
template <class K>
Mat<K> intersect_column_spaces(const Mat<K>& a, const Mat<K>& b) {
  if (a.cols() == 0 || b.cols() == 0) return Mat<K>(a.rows(), 0);
  Mat<K> ker = kernel_basis<K>(hstack<K>(a, Mat<K>(-b)));
  Mat<K> inter(a.rows(), ker.cols());
  for (int j = 0; j < ker.cols(); ++j)
    inter.col(j) = a * ker.col(j).head(a.cols());
  return column_space_basis<K>(inter);
}

template <class K>
bool subspace_contained(const Mat<K>& sub, const Mat<K>& big) {
  for (int j = 0; j < sub.cols(); ++j)
    if (!in_column_space<K>(big, Vec<K>(sub.col(j)))) return false;
  return true;
}

template <class K>
bool is_zero_matrix(const Mat<K>& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

// Characteristic polynomial by the Samuelson-Berkowitz recursion
// (division-free, valid over any commutative ring).  Returned coefficients
// c[0..n] satisfy det(t*I - a) = sum_i c[i] t^(n-i), c[0] = 1.
template <class K>
std::vector<K> char_poly(const Mat<K>& a) {
  const int n = (int)a.rows();
  std::vector<K> c(1, K(1));
  for (int k = 1; k <= n; ++k) {
    // leading principal k x k block
    Mat<K> m = a.topLeftCorner(k, k);
    Vec<K> row = m.row(k - 1).head(k - 1).transpose();
    Vec<K> col = m.col(k - 1).head(k - 1);
    Mat<K> sub = m.topLeftCorner(k - 1, k - 1);
    // Toeplitz column: [1, -m(k-1,k-1), -row*col, -row*sub*col, ...]
    std::vector<K> t(k + 1);
    t[0] = K(1);
    t[1] = -m(k - 1, k - 1);
    Vec<K> acc = col;
    for (int i = 2; i <= k; ++i) {
      t[i] = -(row.transpose() * acc)(0, 0);
      if (i < k) acc = sub * acc;
    }
    std::vector<K> next(k + 1, K(0));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j < (int)c.size(); ++j)
        if (i + j <= k) next[i + j] += t[i] * c[j];
    c = std::move(next);
  }
  return c;
}

}  // namespace defcat
