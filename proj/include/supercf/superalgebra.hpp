#pragma once

#include <string>
#include <utility>
#include <vector>

#include "supercf/graded.hpp"
#include "supercf/rng.hpp"

namespace supercf {

/// One basis product b_i * b_j, stored sparsely as (k, coefficient) pairs
/// sorted by k.
using SparseVec = std::vector<std::pair<int, Rational>>;

/// Finite-dimensional Z2-graded unital algebra presented by a homogeneous
/// basis, a parity vector and structure constants. Basis convention: even
/// vectors first (the parity vector is nondecreasing). dim 0 is allowed and
/// represents the zero algebra.
struct SuperAlgebra {
  int dim = 0;
  std::vector<int> parity;                    // 0/1 per basis index
  std::vector<std::vector<SparseVec>> table;  // table[i][j] = coords of b_i b_j
  VecQ unit;

  int even_dim() const {
    int n = 0;
    for (int p : parity) n += (p == 0);
    return n;
  }
  int odd_dim() const { return dim - even_dim(); }
  GradedDim graded_dim() const { return GradedDim{even_dim(), odd_dim()}; }
};

/// Result of a direct sum: the combined algebra (re-sorted so even vectors
/// come first) plus the embeddings old index -> new index and the two block
/// units in the new coordinates.
struct DirectSum {
  SuperAlgebra algebra;
  std::vector<int> embed_left, embed_right;
  VecQ unit_left, unit_right;
};

/// Basis change b'_j = sum_i T[i][j] b_i together with the transformed
/// algebra.
struct BasisChange {
  SuperAlgebra algebra;
  MatQ change;          // T, columns are the new basis vectors
  MatQ change_inverse;  // T^{-1}
};

VecQ multiply(const SuperAlgebra& alg, const VecQ& a, const VecQ& b);
MatQ left_mult_matrix(const SuperAlgebra& alg, const VecQ& a);
MatQ right_mult_matrix(const SuperAlgebra& alg, const VecQ& a);

/// Parity of a homogeneous element, or -1 for 0 or mixed vectors.
int element_parity(const SuperAlgebra& alg, const VecQ& a);

/// Full structural validation (parity values and ordering, grading of the
/// structure constants, unit law, associativity over all basis triples).
/// Returns human-readable problems; empty means valid.
std::vector<std::string> validate(const SuperAlgebra& alg);

/// Endomorphism algebra of K^{n|m} on the matrix-unit basis, even units
/// first. parity(E_ij) = 0 iff i,j are on the same side of n.
SuperAlgebra build_mat(int n, int m);

/// Mat(n) with an adjoined odd element s commuting with Mat(n), s^2 = 1.
/// Basis: the n^2 matrix units, then the n^2 units times s.
SuperAlgebra build_q(int n);

/// Basis of the even part of the graded center: even z with z b = b z for
/// every basis element b.
std::vector<VecQ> graded_center_even(const SuperAlgebra& alg);

/// Trace-form criterion on the underlying ungraded algebra (valid in
/// characteristic zero): nondegenerate iff semisimple.
bool is_semisimple(const SuperAlgebra& alg);

DirectSum direct_sum_algebras(const SuperAlgebra& a, const SuperAlgebra& b);

/// Conjugates the structure constants by a seeded random invertible
/// parity-preserving matrix with entries in [-3, 3] (redrawn until
/// invertible). Deterministic per seed.
BasisChange random_graded_basis_change(const SuperAlgebra& alg, std::uint64_t seed);

/// Basis change by an explicit parity-preserving invertible matrix.
BasisChange apply_basis_change(const SuperAlgebra& alg, const MatQ& t);

/// Structure constants and parities restricted to a subspace spanned by the
/// given homogeneous vectors (must be closed under multiplication; the
/// provided unit coordinates are in parent coordinates).
SuperAlgebra subalgebra_on_basis(const SuperAlgebra& parent, const std::vector<VecQ>& basis,
                                 const std::vector<int>& basis_parity, const VecQ& unit_parent);

}  // namespace supercf
