#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "supercf/cf.hpp"
#include "supercf/rng.hpp"

namespace supercf {

enum class ClassifyVerdict { Classified, NotSemisimple, NotSplit, AxiomViolation };

std::string verdict_name(ClassifyVerdict v);

/// One elementary summand of a classified algebra. mu_squared is the
/// canonical square of the boundary normalization (mu itself is defined only
/// up to the choice of isomorphism): lambda for Mat blocks, 2*lambda for Q
/// blocks, both backed by a blockwise Cardy check.
struct ElementarySummand {
  ElemKind kind = ElemKind::Triv;
  int n = 0, m = 0;
  Rational lambda;
  Rational mu_squared;  // 0 for Triv
  VecQ bulk_idempotent;
  std::optional<VecQ> block_unit;
};

struct ClassificationReport {
  ClassifyVerdict verdict = ClassifyVerdict::AxiomViolation;
  std::vector<ElementarySummand> summands;
  CheckReport checks;
  std::string detail;
};

struct SplitFailure {
  ClassifyVerdict verdict;  // NotSemisimple or NotSplit
  std::string detail;
};

/// Complete list of orthogonal primitive idempotents of a commutative,
/// purely even, semisimple algebra, or a structured failure. Randomized
/// splitting element with a retry budget of 8; deterministic per rng state.
std::variant<std::vector<VecQ>, SplitFailure> primitive_idempotents_commutative(
    const SuperAlgebra& a, Rng& rng);

struct BoundaryBlock {
  std::vector<VecQ> basis;  // homogeneous, even first, parent coordinates
  std::vector<int> parity;
  SuperAlgebra algebra;
  VecQ central_idempotent;  // block unit in parent coordinates
  VecQ unit_in_block;       // the same element in block coordinates
};

/// Splits a semisimple graded algebra into the two-sided ideals cut out by
/// the primitive idempotents of the even graded center.
std::variant<std::vector<BoundaryBlock>, SplitFailure> decompose_boundary(const SuperAlgebra& b,
                                                                          Rng& rng);

struct BlockType {
  ElemKind kind;  // Mat or Q
  int n = 0, m = 0;
};

/// Type of a graded-simple block from its dimension signature:
/// (n^2+m^2, 2nm) -> Mat(n, m) with n >= m; (n^2, n^2) -> Q(n); else unknown.
/// The two signatures are mutually exclusive (2n^2 is never a square).
std::optional<BlockType> identify_block_type(int even_dim, int odd_dim);

struct FormLine {
  bool space_is_line = false;  // symmetry constraints cut out exactly a line
  VecQ generator;              // primitive generator of that line
  bool theta_in_line = false;
  Rational coefficient;        // restricted theta = coefficient * generator
};

/// Solves the signed-symmetry constraints on the block and locates the
/// restricted boundary form inside the solution space.
FormLine form_proportionality(const SuperAlgebra& block, const VecQ& theta_restricted);

struct IdempotentMatching {
  std::vector<int> block_of_idempotent;  // -1 where tau_*(e_i) = 0
  std::optional<Witness> violation;
};

/// Matches bulk idempotents to boundary blocks: each image must be zero or
/// exactly one block unit, and each block unit must be hit exactly once.
IdempotentMatching match_idempotents(const CFData& cf, const std::vector<VecQ>& idempotents,
                                     const std::vector<BoundaryBlock>& blocks);

/// Full pipeline: verify_all, semisimplicity, bulk idempotents, boundary
/// decomposition, block typing, form rigidity, idempotent matching, and the
/// blockwise parameter relations.
ClassificationReport classify(const CFData& cf, std::uint64_t seed = 0);

}  // namespace supercf
