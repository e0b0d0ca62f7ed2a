#pragma once

#include <vector>

#include "supercf/superalgebra.hpp"

namespace supercf {

/// Structure constants with denominators cleared: table entry c[i][j][k]
/// equals num(i,j,k) / denom exactly. Dense integer tensor for O(1) lookup
/// plus the sparse lists for iteration. Backs the supertrace-heavy checks.
struct ClearedAlgebra {
  int dim = 0;
  mpz_class denom = 1;
  std::vector<mpz_class> num;  // dim^3, index (i*dim + j)*dim + k
  const SuperAlgebra* alg = nullptr;

  static ClearedAlgebra from(const SuperAlgebra& a);
  const mpz_class& at(int i, int j, int k) const {
    return num[(std::size_t(i) * dim + j) * dim + k];
  }
};

/// True certifies the square integer matrix is nonsingular (determinant
/// nonzero modulo a large prime). False is inconclusive.
bool nonsingular_mod_probe(const std::vector<std::vector<mpz_class>>& m);

/// Exact full-rank test for the Gram-type rational matrix: fast modular
/// certificate first, exact elimination when the certificate fails.
bool full_rank_exact(const MatQ& g);

}  // namespace supercf
