#pragma once

#include <optional>
#include <vector>

#include "supercf/rational.hpp"

namespace supercf {

/// Dense matrix of exact rationals, row-major.
class MatQ {
 public:
  MatQ() : rows_(0), cols_(0) {}
  MatQ(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static MatQ identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }
  static MatQ from_columns(const std::vector<VecQ>& cols, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  VecQ row(int i) const;
  VecQ col(int j) const;
  MatQ transposed() const;
  bool operator==(const MatQ& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  MatQ operator*(const MatQ& o) const;
  VecQ operator*(const VecQ& v) const;
  MatQ operator+(const MatQ& o) const;
  MatQ operator-(const MatQ& o) const;
  MatQ scaled(const Rational& c) const;
  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

/// Exact rank via fraction-free elimination.
int rank(const MatQ& a);

/// One exact solution of A x = b (free variables set to 0), or nullopt when
/// inconsistent. Deterministic: fraction-free elimination, pivot = first
/// nonzero entry in column order.
std::optional<VecQ> solve_linear(const MatQ& a, const VecQ& b);

/// Exact null-space basis; each vector scaled to a primitive integer vector
/// whose first nonzero entry is positive. Dimension = cols - rank.
std::vector<VecQ> kernel_basis(const MatQ& a);

/// Indices of the columns that introduce a new pivot when eliminating left to
/// right (a basis of the column space, and the tool behind basis completion).
std::vector<int> pivot_columns(const MatQ& a);

/// Exact inverse, or nullopt when singular.
std::optional<MatQ> inverse(const MatQ& a);

/// Scales a rational vector to a primitive integer vector with positive first
/// nonzero entry. Zero vectors are returned unchanged.
VecQ primitive_normalized(const VecQ& v);

/// Repeated exact solves against one matrix: factors once, then solve(b)
/// answers A x = b (free variables 0) or nullopt if inconsistent.
class LinearSolver {
 public:
  explicit LinearSolver(const MatQ& a);
  std::optional<VecQ> solve(const VecQ& b) const;
  int rank() const { return int(pivot_cols_.size()); }

 private:
  int n_, m_;                   // rows, cols of A
  MatQ rref_;                   // RREF of [A | I]
  std::vector<int> pivot_cols_;
};

}  // namespace supercf
