#include <doctest.h>

#include <algorithm>

#include "supercf/classify.hpp"
#include "supercf/univariate.hpp"

using namespace supercf;

namespace {

SuperAlgebra quadratic_algebra(long c) {  // K[t]/(t^2 - c)
  SuperAlgebra a;
  a.dim = 2;
  a.parity = {0, 0};
  a.table.assign(2, std::vector<SparseVec>(2));
  a.table[0][0] = {{0, Rational(1)}};
  a.table[0][1] = {{1, Rational(1)}};
  a.table[1][0] = {{1, Rational(1)}};
  if (c != 0) a.table[1][1] = {{0, Rational(c)}};
  a.unit = {Rational(1), Rational(0)};
  return a;
}

CFData with_trivial_boundary(const SuperAlgebra& bulk, const VecQ& theta) {
  CFData cf;
  cf.bulk = bulk;
  cf.theta_bulk = theta;
  cf.boundary.dim = 0;
  cf.bulk_to_boundary = MatQ(0, bulk.dim);
  cf.boundary_to_bulk = MatQ(bulk.dim, 0);
  return cf;
}

// rational quaternions with the symmetric trace-like form; splits only after
// a field extension, so typing goes through the dimension signature
CFData quaternion_cf() {
  CFData cf;
  SuperAlgebra h;
  h.dim = 4;
  h.parity = {0, 0, 0, 0};
  h.table.assign(4, std::vector<SparseVec>(4));
  auto set = [&h](int a, int b, int target, long coeff) {
    h.table[a][b] = {{target, Rational(coeff)}};
  };
  set(0, 0, 0, 1); set(0, 1, 1, 1); set(0, 2, 2, 1); set(0, 3, 3, 1);
  set(1, 0, 1, 1); set(2, 0, 2, 1); set(3, 0, 3, 1);
  set(1, 1, 0, -1); set(2, 2, 0, -1); set(3, 3, 0, -1);
  set(1, 2, 3, 1); set(2, 1, 3, -1);
  set(2, 3, 1, 1); set(3, 2, 1, -1);
  set(3, 1, 2, 1); set(1, 3, 2, -1);
  h.unit = {Rational(1), Rational(0), Rational(0), Rational(0)};

  cf.bulk.dim = 1;
  cf.bulk.parity = {0};
  cf.bulk.table = {{SparseVec{{0, Rational(1)}}}};
  cf.bulk.unit = {Rational(1)};
  cf.theta_bulk = {Rational(4)};
  cf.boundary = h;
  cf.theta_boundary = {Rational(4), Rational(0), Rational(0), Rational(0)};
  cf.bulk_to_boundary = MatQ(4, 1);
  cf.bulk_to_boundary.at(0, 0) = Rational(1);
  return cf;
}

std::vector<std::tuple<int, int, int, Rational>> summand_keys(const ClassificationReport& r) {
  std::vector<std::tuple<int, int, int, Rational>> keys;
  for (const auto& s : r.summands) keys.emplace_back(int(s.kind), s.n, s.m, s.lambda);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

TEST_CASE("simplest_in finds stern-brocot representatives") {
  CHECK(simplest_in(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
  CHECK(simplest_in(Rational(-1, 2), Rational(1, 3)) == Rational(0));
  CHECK(simplest_in(Rational(3), Rational(4)) == Rational(7, 2));
  CHECK(simplest_in(Rational(5, 2), Rational(9)) == Rational(3));
  CHECK(simplest_in(Rational(-7, 3), Rational(-9, 4)) == Rational(-16, 7));
}

TEST_CASE("rational roots of square-free polynomials") {
  // (x - 1/2)(x + 3)(x - 5)
  QPoly p = qpoly_mul(qpoly_mul(QPoly{Rational(-1, 2), Rational(1)}, QPoly{Rational(3), Rational(1)}),
                      QPoly{Rational(-5), Rational(1)});
  RationalRoots rr = rational_roots_squarefree(p);
  REQUIRE(rr.roots.size() == 3);
  CHECK(rr.roots[0] == Rational(-3));
  CHECK(rr.roots[1] == Rational(1, 2));
  CHECK(rr.roots[2] == Rational(5));
  CHECK(qpoly_deg(rr.cofactor) == 0);

  // x^2 - 2: no rational roots
  RationalRoots irr = rational_roots_squarefree(QPoly{Rational(-2), Rational(0), Rational(1)});
  CHECK(irr.roots.empty());
  CHECK(qpoly_deg(irr.cofactor) == 2);

  // mixed: (x^2 - 2)(x - 2/3)
  QPoly mixed = qpoly_mul(QPoly{Rational(-2), Rational(0), Rational(1)},
                          QPoly{Rational(-2, 3), Rational(1)});
  RationalRoots mr = rational_roots_squarefree(mixed);
  REQUIRE(mr.roots.size() == 1);
  CHECK(mr.roots[0] == Rational(2, 3));
  CHECK(qpoly_deg(mr.cofactor) == 2);
  CHECK(qpoly_eval(mr.cofactor, Rational(0)) == Rational(-2));
}

TEST_CASE("minimal polynomials in small algebras") {
  SuperAlgebra k3 =
      direct_sum_algebras(direct_sum_algebras(build_mat(1, 0), build_mat(1, 0)).algebra,
                          build_mat(1, 0))
          .algebra;
  VecQ t = {Rational(1), Rational(2), Rational(3)};
  QPoly p = minimal_polynomial(k3, t);
  CHECK(qpoly_deg(p) == 3);
  CHECK(qpoly_eval(p, Rational(1)).is_zero());
  CHECK(qpoly_eval(p, Rational(2)).is_zero());
  CHECK(qpoly_eval(p, Rational(3)).is_zero());

  QPoly q = minimal_polynomial(quadratic_algebra(2), VecQ{Rational(0), Rational(1)});
  CHECK(q == QPoly{Rational(-2), Rational(0), Rational(1)});
}

TEST_CASE("primitive idempotents of split commutative algebras") {
  Rng rng(1);
  SuperAlgebra k = build_mat(1, 0);
  auto single = primitive_idempotents_commutative(k, rng);
  REQUIRE(std::holds_alternative<std::vector<VecQ>>(single));
  CHECK(std::get<std::vector<VecQ>>(single) == std::vector<VecQ>{{Rational(1)}});

  SuperAlgebra k3 =
      direct_sum_algebras(direct_sum_algebras(build_mat(1, 0), build_mat(1, 0)).algebra,
                          build_mat(1, 0))
          .algebra;
  auto three = primitive_idempotents_commutative(k3, rng);
  REQUIRE(std::holds_alternative<std::vector<VecQ>>(three));
  auto idems = std::get<std::vector<VecQ>>(three);
  REQUIRE(idems.size() == 3);
  // up to order these are the coordinate vectors; orthogonality is exact
  for (const auto& e : idems) {
    CHECK(multiply(k3, e, e) == e);
    int support = 0;
    for (const auto& c : e) support += !c.is_zero();
    CHECK(support == 1);
  }

  // scrambled version still splits
  BasisChange bc = random_graded_basis_change(k3, 99);
  auto scrambled = primitive_idempotents_commutative(bc.algebra, rng);
  REQUIRE(std::holds_alternative<std::vector<VecQ>>(scrambled));
  auto sidems = std::get<std::vector<VecQ>>(scrambled);
  REQUIRE(sidems.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const VecQ prod = multiply(bc.algebra, sidems[i], sidems[j]);
      if (i == j) CHECK(prod == sidems[i]);
      else CHECK(is_zero_vec(prod));
    }
}

TEST_CASE("non-split and non-semisimple inputs are reported structurally") {
  Rng rng(5);
  auto notsplit = primitive_idempotents_commutative(quadratic_algebra(2), rng);
  REQUIRE(std::holds_alternative<SplitFailure>(notsplit));
  CHECK(std::get<SplitFailure>(notsplit).verdict == ClassifyVerdict::NotSplit);
  CHECK(std::get<SplitFailure>(notsplit).detail.find("non-split factor") != std::string::npos);

  auto notss = primitive_idempotents_commutative(quadratic_algebra(0), rng);
  REQUIRE(std::holds_alternative<SplitFailure>(notss));
  CHECK(std::get<SplitFailure>(notss).verdict == ClassifyVerdict::NotSemisimple);

  auto notcomm = primitive_idempotents_commutative(build_mat(2, 0), rng);
  REQUIRE(std::holds_alternative<SplitFailure>(notcomm));
  CHECK(std::get<SplitFailure>(notcomm).verdict == ClassifyVerdict::NotSemisimple);
}

TEST_CASE("decompose_boundary splits scrambled sums into graded-simple blocks") {
  Rng rng(7);
  auto whole = decompose_boundary(build_mat(1, 1), rng);
  REQUIRE(std::holds_alternative<std::vector<BoundaryBlock>>(whole));
  REQUIRE(std::get<std::vector<BoundaryBlock>>(whole).size() == 1);
  CHECK(std::get<std::vector<BoundaryBlock>>(whole)[0].algebra.dim == 4);

  DirectSum s = direct_sum_algebras(build_mat(1, 1), build_q(1));
  BasisChange bc = random_graded_basis_change(s.algebra, 31337);
  auto blocks_or = decompose_boundary(bc.algebra, rng);
  REQUIRE(std::holds_alternative<std::vector<BoundaryBlock>>(blocks_or));
  auto blocks = std::get<std::vector<BoundaryBlock>>(blocks_or);
  REQUIRE(blocks.size() == 2);
  std::vector<std::pair<int, int>> dims;
  for (const auto& b : blocks) {
    CHECK(validate(b.algebra).empty());
    dims.emplace_back(b.algebra.even_dim(), b.algebra.odd_dim());
  }
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::pair<int, int>>{{1, 1}, {2, 2}});

  SuperAlgebra zero;
  auto none = decompose_boundary(zero, rng);
  CHECK(std::get<std::vector<BoundaryBlock>>(none).empty());
}

TEST_CASE("block typing from dimension signatures") {
  auto t = identify_block_type(2, 2);
  REQUIRE(t);
  CHECK(t->kind == ElemKind::Mat);
  CHECK(t->n == 1);
  CHECK(t->m == 1);

  t = identify_block_type(1, 1);
  REQUIRE(t);
  CHECK(t->kind == ElemKind::Q);
  CHECK(t->n == 1);

  t = identify_block_type(5, 4);
  REQUIRE(t);
  CHECK(t->kind == ElemKind::Mat);
  CHECK(t->n == 2);
  CHECK(t->m == 1);

  t = identify_block_type(1, 0);
  REQUIRE(t);
  CHECK(t->kind == ElemKind::Mat);
  CHECK(t->n == 1);
  CHECK(t->m == 0);

  CHECK(!identify_block_type(3, 3));
  CHECK(!identify_block_type(6, 2));
}

TEST_CASE("form rigidity on the simple algebras") {
  CFData m11 = build_elementary({ElemKind::Mat, 1, 1, Rational(1), Rational(1)});
  FormLine line = form_proportionality(m11.boundary, m11.theta_boundary);
  CHECK(line.space_is_line);
  CHECK(line.theta_in_line);
  CHECK(!line.coefficient.is_zero());

  // Q(1): the rigid form vanishes identically on the even part
  CFData q1 = build_elementary({ElemKind::Q, 1, 0, Rational(1, 2), Rational(1)});
  FormLine qline = form_proportionality(q1.boundary, q1.theta_boundary);
  CHECK(qline.space_is_line);
  CHECK(qline.theta_in_line);
  for (int l = 0; l < q1.boundary.dim; ++l)
    if (q1.boundary.parity[l] == 0) CHECK(qline.generator[l].is_zero());

  // Mat(2|1): proportional to the supertrace, opposite signs on the two
  // even diagonal blocks
  CFData m21 = build_elementary({ElemKind::Mat, 2, 1, Rational(1), Rational(1)});
  FormLine mline = form_proportionality(m21.boundary, m21.theta_boundary);
  CHECK(mline.space_is_line);
  CHECK(mline.theta_in_line);
  const auto units = mat_unit_order(2, 1);
  VecQ str_vec(m21.boundary.dim);
  for (int a = 0; a < m21.boundary.dim; ++a)
    if (units[a].first == units[a].second)
      str_vec[a] = units[a].first < 2 ? Rational(1) : Rational(-1);
  CHECK(primitive_normalized(mline.generator) == primitive_normalized(str_vec));
}

TEST_CASE("idempotent matching and its violations") {
  CFData mat = build_elementary({ElemKind::Mat, 1, 1, Rational(1), Rational(1)});
  CFData triv = build_elementary({ElemKind::Triv, 0, 0, Rational(7), Rational(0)});
  CFData sum = direct_sum_cf(mat, triv);
  Rng rng(3);
  auto idems_or = primitive_idempotents_commutative(sum.bulk, rng);
  auto blocks_or = decompose_boundary(sum.boundary, rng);
  auto idems = std::get<std::vector<VecQ>>(idems_or);
  auto blocks = std::get<std::vector<BoundaryBlock>>(blocks_or);
  REQUIRE(idems.size() == 2);
  REQUIRE(blocks.size() == 1);

  IdempotentMatching match = match_idempotents(sum, idems, blocks);
  CHECK(!match.violation);
  int zeros = 0, hits = 0;
  for (int b : match.block_of_idempotent) (b < 0 ? zeros : hits) += 1;
  CHECK(zeros == 1);
  CHECK(hits == 1);

  // corrupt tau_* so an idempotent image is the sum of two block units
  CFData qd = build_elementary({ElemKind::Q, 1, 0, Rational(1, 2), Rational(1)});
  CFData pair = direct_sum_cf(mat, qd);
  Rng rng2(4);
  auto idems2 = std::get<std::vector<VecQ>>(primitive_idempotents_commutative(pair.bulk, rng2));
  auto blocks2 = std::get<std::vector<BoundaryBlock>>(decompose_boundary(pair.boundary, rng2));
  REQUIRE(idems2.size() == 2);
  REQUIRE(blocks2.size() == 2);
  CFData corrupted = pair;
  for (int r = 0; r < pair.boundary.dim; ++r) {
    Rational both = blocks2[0].central_idempotent[r] + blocks2[1].central_idempotent[r];
    corrupted.bulk_to_boundary.at(r, 0) = both;
    corrupted.bulk_to_boundary.at(r, 1) = both;
  }
  IdempotentMatching bad = match_idempotents(corrupted, idems2, blocks2);
  REQUIRE(bad.violation);
}

TEST_CASE("classify elementary and mixed instances") {
  ClassificationReport r =
      classify(build_elementary({ElemKind::Mat, 1, 1, Rational(1), Rational(1)}), 0);
  REQUIRE(r.verdict == ClassifyVerdict::Classified);
  REQUIRE(r.summands.size() == 1);
  CHECK(r.summands[0].kind == ElemKind::Mat);
  CHECK(r.summands[0].n == 1);
  CHECK(r.summands[0].m == 1);
  CHECK(r.summands[0].lambda == Rational(1));
  CHECK(r.summands[0].mu_squared == Rational(1));

  CFData sum = direct_sum_cf(
      direct_sum_cf(build_elementary({ElemKind::Mat, 1, 1, Rational(1), Rational(1)}),
                    build_elementary({ElemKind::Q, 1, 0, Rational(1, 2), Rational(1)})),
      build_elementary({ElemKind::Triv, 0, 0, Rational(7), Rational(0)}));
  CFData scrambled = scramble_cf(sum, 2025);
  ClassificationReport rs = classify(scrambled, 11);
  REQUIRE(rs.verdict == ClassifyVerdict::Classified);
  REQUIRE(rs.summands.size() == 3);
  auto keys = summand_keys(rs);
  CHECK(keys[0] == std::tuple(int(ElemKind::Triv), 0, 0, Rational(7)));
  CHECK(keys[1] == std::tuple(int(ElemKind::Mat), 1, 1, Rational(1)));
  CHECK(keys[2] == std::tuple(int(ElemKind::Q), 1, 0, Rational(1, 2)));

  // Q summand reports the canonical square: mu^2 = 2 lambda
  for (const auto& s : rs.summands)
    if (s.kind == ElemKind::Q) CHECK(s.mu_squared == Rational(1));
}

TEST_CASE("classify rejects wrong parameters as a Cardy violation") {
  CFData bad = build_elementary({ElemKind::Mat, 1, 1, Rational(1), Rational(1)});
  for (auto& v : bad.theta_boundary) v *= Rational(3);  // theta_B scaled off-relation
  bad.boundary_to_bulk.reset();                         // let the adjoint be re-derived
  ClassificationReport r = classify(bad, 0);
  CHECK(r.verdict == ClassifyVerdict::AxiomViolation);
  CHECK(!r.checks.find("cardy")->passed);
}

TEST_CASE("classify verdicts for degenerate bulks") {
  SuperAlgebra dual = quadratic_algebra(0);
  CFData nil = with_trivial_boundary(dual, {Rational(0), Rational(1)});
  ClassificationReport r1 = classify(nil, 0);
  CHECK(r1.verdict == ClassifyVerdict::NotSemisimple);

  CFData nosplit = with_trivial_boundary(quadratic_algebra(2),
                                         {Rational(0), Rational(1)});
  ClassificationReport r2 = classify(nosplit, 0);
  CHECK(r2.verdict == ClassifyVerdict::NotSplit);
  CHECK(r2.detail.find("non-split factor") != std::string::npos);
}

TEST_CASE("quaternion boundary is typed through its closure signature") {
  ClassificationReport r = classify(quaternion_cf(), 0);
  REQUIRE(r.verdict == ClassifyVerdict::Classified);
  REQUIRE(r.summands.size() == 1);
  CHECK(r.summands[0].kind == ElemKind::Mat);
  CHECK(r.summands[0].n == 2);
  CHECK(r.summands[0].m == 0);
  CHECK(r.summands[0].lambda == Rational(4));
  CHECK(r.summands[0].mu_squared == Rational(4));
}

TEST_CASE("classification round-trip over random scrambles") {
  Rng gen(20250810);
  int trials = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int count = int(gen.next_int(1, 3));
    std::vector<std::tuple<int, int, int, Rational>> expected;
    CFData sum;
    bool first = true;
    for (int s = 0; s < count; ++s) {
      ElementaryParams p;
      const int kind = int(gen.next_int(0, 2));
      Rational mu = Rational(gen.next_int(1, 3), gen.next_int(1, 2));
      if (kind == 0) {
        p = {ElemKind::Triv, 0, 0, Rational(gen.next_int(1, 9)), Rational(0)};
      } else if (kind == 1) {
        int n = int(gen.next_int(0, 2));
        int m = int(gen.next_int(0, n == 0 ? 1 : 2));
        if (n + m == 0) n = 1;
        if (m > n) std::swap(n, m);
        p = {ElemKind::Mat, n, m, mu * mu, mu};
      } else {
        p = {ElemKind::Q, int(gen.next_int(1, 2)), 0, mu * mu / Rational(2), mu};
      }
      expected.emplace_back(int(p.kind), p.n, p.m, p.lambda);
      CFData built = build_elementary(p);
      sum = first ? built : direct_sum_cf(sum, built);
      first = false;
    }
    std::sort(expected.begin(), expected.end());
    CFData scrambled = scramble_cf(sum, gen.next_u64());
    ClassificationReport r = classify(scrambled, gen.next_u64());
    REQUIRE(r.verdict == ClassifyVerdict::Classified);
    CHECK(summand_keys(r) == expected);

    // structure: at least as many bulk idempotents as boundary blocks, and
    // nonzero lambda everywhere
    int blocks = 0;
    for (const auto& s : r.summands) {
      CHECK(!s.lambda.is_zero());
      blocks += s.block_unit.has_value();
    }
    CHECK(int(r.summands.size()) >= blocks);
    ++trials;
  }
  CHECK(trials == 12);
}
