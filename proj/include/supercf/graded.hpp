#pragma once

#include <stdexcept>

#include "supercf/linalg.hpp"

namespace supercf {

/// Dimensions of a Z2-graded vector space K^{n|m}. Basis convention
/// throughout: the n even vectors come first, then the m odd ones.
struct GradedDim {
  int even = 0;
  int odd = 0;
  int total() const { return even + odd; }
  bool operator==(const GradedDim&) const = default;
};

inline int index_parity(const GradedDim& d, int i) { return i < d.even ? 0 : 1; }

/// Homogeneous linear map between graded spaces: a parity-0 map has zero
/// blocks coupling even and odd, a parity-1 map the reverse.
struct GradedMatrix {
  MatQ entries;
  GradedDim row_dims;  // grading of the target
  GradedDim col_dims;  // grading of the source
  int parity = 0;
};

/// Validates the block structure required by the parity flag.
inline void check_graded(const GradedMatrix& m) {
  if (m.entries.rows() != m.row_dims.total() || m.entries.cols() != m.col_dims.total())
    throw std::invalid_argument("GradedMatrix: entry shape does not match gradings");
  if (m.parity != 0 && m.parity != 1) throw std::invalid_argument("GradedMatrix: bad parity");
  for (int i = 0; i < m.entries.rows(); ++i)
    for (int j = 0; j < m.entries.cols(); ++j) {
      const int block = (index_parity(m.row_dims, i) + index_parity(m.col_dims, j)) % 2;
      if (block != m.parity && !m.entries.at(i, j).is_zero())
        throw std::invalid_argument("GradedMatrix: nonzero entry outside parity blocks");
    }
}

/// Composition a∘b; parities add mod 2.
inline GradedMatrix compose(const GradedMatrix& a, const GradedMatrix& b) {
  if (!(a.col_dims == b.row_dims))
    throw std::invalid_argument("compose: inner gradings do not match");
  return GradedMatrix{a.entries * b.entries, a.row_dims, b.col_dims, (a.parity + b.parity) % 2};
}

/// Supertrace: sum of diagonal entries over even indices minus the sum over
/// odd indices. Requires a square matrix with matching gradings.
inline Rational supertrace(const GradedMatrix& m) {
  if (!(m.row_dims == m.col_dims))
    throw std::invalid_argument("supertrace: matrix is not square with matching gradings");
  Rational s;
  for (int i = 0; i < m.row_dims.total(); ++i) {
    if (index_parity(m.row_dims, i) == 0)
      s += m.entries.at(i, i);
    else
      s -= m.entries.at(i, i);
  }
  return s;
}

}  // namespace supercf
