#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supercf/superalgebra.hpp"

namespace supercf {

/// Counterexample data attached to a failed check: the basis indices it was
/// found on and the two scalars that should have been equal.
struct Witness {
  std::vector<long> indices;
  Rational lhs, rhs;
  std::string note;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::optional<Witness> witness;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  int failed_count() const {
    int n = 0;
    for (const auto& c : checks) n += !c.passed;
    return n;
  }
};

/// The six-piece bundle: bulk algebra A, boundary algebra B, the two linear
/// forms, the bulk-boundary map tau_* (dim B x dim A) and the boundary-bulk
/// map tau^* (dim A x dim B). May hold invalid candidates; the checkers
/// decide.
struct CFData {
  SuperAlgebra bulk;
  SuperAlgebra boundary;
  VecQ theta_bulk;
  VecQ theta_boundary;
  MatQ bulk_to_boundary;
  std::optional<MatQ> boundary_to_bulk;
};

enum class ElemKind { Triv, Mat, Q };

std::string elem_kind_name(ElemKind k);

struct ElementaryParams {
  ElemKind kind = ElemKind::Triv;
  int n = 0, m = 0;      // m unused for Q/Triv, n unused for Triv
  Rational lambda;       // bulk form normalization, nonzero
  Rational mu;           // boundary form normalization, unused for Triv
};

/// theta(x y).
Rational pairing(const VecQ& theta, const SuperAlgebra& alg, const VecQ& x, const VecQ& y);

/// G[i][j] = theta(b_i b_j).
MatQ gram_matrix(const VecQ& theta, const SuperAlgebra& alg);

CheckResult check_symmetry(const VecQ& theta, const SuperAlgebra& alg, const std::string& name);
CheckResult check_nondegenerate(const VecQ& theta, const SuperAlgebra& alg, const std::string& name);
CheckResult check_supercommutative(const SuperAlgebra& alg, const std::string& name);

/// Unitality, multiplicativity, supercentrality of the image, and parity
/// preservation of the bulk-boundary map.
CheckResult check_bulk_boundary(const CFData& cf);

/// Unique boundary-bulk map adjoint to tau_* for the two pairings; requires
/// both Gram matrices invertible (throws std::domain_error otherwise).
MatQ derive_adjoint(const CFData& cf);

/// theta_A(tau^*(Y) a) = theta_B(Y tau_*(a)) on all basis pairs, plus
/// homogeneity (uniformly parity-preserving or parity-reversing).
CheckResult check_adjoint(const CFData& cf);

/// Matrix of f |-> (-1)^{|X||f|} X f Y on the boundary basis. X, Y must be
/// homogeneous. The sign convention reproduces the two-sided multiplication
/// supertraces that drive the Cardy identity.
GradedMatrix multiplication_operator(const SuperAlgebra& b, const VecQ& x, const VecQ& y);

/// Supertrace of the two-sided multiplication operator, computed directly
/// from the structure constants.
Rational cardy_rhs(const SuperAlgebra& b, int i, int j);

/// <tau^*(X), tau^*(Y)>_A = str(m_{X,Y}) over all ordered homogeneous basis
/// pairs of B, exact equality.
CheckResult check_cardy(const CFData& cf);

/// Copy of cf with boundary_to_bulk filled in (derived when absent).
CFData ensure_adjoint(const CFData& cf);

/// Runs symmetry (both forms), nondegeneracy (both), supercommutativity of
/// the bulk, bulk-boundary, adjointness and Cardy; aggregates the verdicts.
CheckReport verify_all(const CFData& cf);

CFData build_elementary(const ElementaryParams& p);

CFData direct_sum_cf(const CFData& a, const CFData& b);

/// Conjugates both algebras by seeded random graded basis changes and
/// transports the forms and maps (test/fixture utility).
CFData scramble_cf(const CFData& cf, std::uint64_t seed);

/// Matrix-unit order used by build_mat: even units (i,j on the same side of
/// n) in row-major order, then the odd ones.
std::vector<std::pair<int, int>> mat_unit_order(int n, int m);

}  // namespace supercf
