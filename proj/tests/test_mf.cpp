#include <doctest.h>

#include "mf_support.hpp"
#include "supercf/classify.hpp"
#include "supercf/mf.hpp"

using namespace supercf;

namespace {

VecQ unit_vec(int dim, int i) {
  VecQ v(dim);
  v[i] = Rational(1);
  return v;
}

// d phi - (-1)^p phi d must vanish for every representative
void check_reps_closed(const MatrixFactorization& r, const MFCohomology& coh) {
  const int n = r.rank();
  PolyMat d(2 * n, 2 * n, r.w.nvars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.at(i, n + j) = r.d1.at(i, j);
      d.at(n + i, j) = r.d0.at(i, j);
    }
  for (int k = 0; k < coh.algebra.dim; ++k) {
    const PolyMat& rep = coh.reps[k];
    const PolyMat comm = coh.algebra.parity[k] == 0 ? d * rep - rep * d : d * rep + rep * d;
    CHECK(comm.is_zero());
  }
}

MatrixFactorization strip_factors(const MatrixFactorization& r) {
  MatrixFactorization raw = r;
  raw.factors.clear();
  return raw;
}

}  // namespace

TEST_CASE("validate_mf pinned examples") {
  CHECK(validate_mf(univariate_power_mf("x", 2, 1, Rational(1))).ok);
  for (int s = 2; s <= 6; ++s)
    for (int a = 1; a < s; ++a) CHECK(validate_mf(univariate_power_mf("x", s, a, Rational(1))).ok);

  MatrixFactorization bad = univariate_power_mf("x", 4, 1, Rational(1));
  bad.d1.at(0, 0) = bad.d1.at(0, 0) + Poly::constant(1, Rational(1));
  const MFValidation v = validate_mf(bad);
  CHECK(!v.ok);
  CHECK(v.detail.find("(d0 d1)[0][0]") != std::string::npos);
}

TEST_CASE("milnor ring shapes and bases") {
  MilnorRing cubic = milnor_ring(Poly::monomial(1, {3}, Rational(1)), {"x"});
  CHECK(cubic.dim() == 2);
  CHECK(cubic.basis == std::vector<Exponents>{{0}, {1}});

  MilnorRing quad = milnor_ring(Poly::monomial(1, {2}, Rational(1)), {"x"});
  CHECK(quad.dim() == 1);

  Poly fermat = Poly::monomial(2, {3, 0}, Rational(1)) + Poly::monomial(2, {0, 3}, Rational(1));
  MilnorRing f = milnor_ring(fermat, {"x", "y"});
  CHECK(f.dim() == 4);
  CHECK(f.basis == std::vector<Exponents>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  // the normal form kills every partial derivative of W
  for (int v = 0; v < 2; ++v) CHECK(is_zero_vec(f.normal_form(fermat.derivative(v))));
  CHECK(is_zero_vec(cubic.normal_form(Poly::monomial(1, {3}, Rational(1)).derivative(0))));

  // normal form is linear and idempotent
  Poly junk = Poly::monomial(1, {5}, Rational(7)) + Poly::monomial(1, {1}, Rational(2));
  const VecQ once = cubic.normal_form(junk);
  CHECK(cubic.normal_form(cubic.poly_of(once)) == once);

  CHECK_THROWS_AS(milnor_ring(Poly::monomial(2, {1, 1}, Rational(1)), {"x", "y"}),
                  UnsupportedShape);
  CHECK_THROWS_AS(milnor_ring(Poly::monomial(1, {1}, Rational(1)), {"x"}), UnsupportedShape);
  Poly missing_var = Poly::monomial(2, {2, 0}, Rational(1));
  CHECK_THROWS_AS(milnor_ring(missing_var, {"x", "y"}), UnsupportedShape);
}

TEST_CASE("milnor ring handles a non-monomial univariate potential") {
  // W = x^3 - x: W' = 3x^2 - 1, basis {1, x}, x^2 reduces to 1/3
  Poly w = Poly::monomial(1, {3}, Rational(1)) - Poly::monomial(1, {1}, Rational(1));
  MilnorRing ring = milnor_ring(w, {"x"});
  CHECK(ring.dim() == 2);
  const VecQ nf = ring.normal_form(Poly::monomial(1, {2}, Rational(1)));
  CHECK(nf == VecQ{Rational(1, 3), Rational(0)});
  CHECK(validate(ring.algebra()).empty());
  CHECK(is_semisimple(ring.algebra()));  // x^3 - x has three distinct critical points
}

TEST_CASE("theta_A values and the residue oracle") {
  MilnorRing cubic = milnor_ring(Poly::monomial(1, {3}, Rational(1)), {"x"});
  CHECK(dot(cubic.theta, cubic.normal_form(Poly::monomial(1, {1}, Rational(1)))) == Rational(1, 3));
  CHECK(dot(cubic.theta, cubic.normal_form(Poly::constant(1, Rational(1)))) == Rational(0));

  MilnorRing quad = milnor_ring(Poly::monomial(1, {2}, Rational(1)), {"x"});
  CHECK(dot(quad.theta, quad.normal_form(Poly::constant(1, Rational(1)))) == Rational(1, 2));

  // cross-validation against the Laurent-expansion oracle on every basis
  // monomial of W = x^s, s <= 6 (and a couple of non-unit leads)
  for (int s = 2; s <= 6; ++s)
    for (const Rational& lead : {Rational(1), Rational(2), Rational(-1, 3)}) {
      MilnorRing ring = milnor_ring(Poly::monomial(1, {s}, lead), {"x"});
      for (int k = 0; k <= s - 2; ++k) {
        const Poly mono = Poly::monomial(1, {k}, Rational(1));
        CHECK(dot(ring.theta, ring.normal_form(mono)) ==
              testing::residue_laurent_oracle(s, lead, mono));
      }
    }
}

TEST_CASE("cohomology dimensions match the closed form for power pairs") {
  for (int s = 2; s <= 6; ++s)
    for (int a = 1; a < s; ++a) {
      const MatrixFactorization r = univariate_power_mf("x", s, a, Rational(1));
      const MFCohomology coh = end_cohomology(r);
      const int t = testing::power_pair_cohomology_dim(s, a);
      CHECK(coh.dims.even == t);
      CHECK(coh.dims.odd == t);
      CHECK(euler_characteristic(coh) == 0);
      check_reps_closed(r, coh);
      CHECK(validate(coh.algebra).empty());
    }
}

TEST_CASE("boundary-bulk values on the smallest factorizations") {
  // W = x^2, R = (x, x): tau^*(1) = 0 and tau^*(eta)^2 corresponds to 4
  const MatrixFactorization r2 = univariate_power_mf("x", 2, 1, Rational(1));
  const MilnorRing ring2 = milnor_ring(r2.w, {"x"});
  const MFCohomology coh2 = end_cohomology(r2);
  REQUIRE(coh2.algebra.dim == 2);
  CHECK(is_zero_vec(boundary_bulk(coh2, ring2, coh2.algebra.unit)));
  const VecQ eta_img = boundary_bulk(coh2, ring2, unit_vec(2, 1));
  REQUIRE(eta_img.size() == 1);
  CHECK(eta_img[0] * eta_img[0] == Rational(4));  // sign depends on the representative

  // theta_B vanishes on even elements; the identity in particular
  CHECK(theta_boundary_value(coh2, ring2, coh2.algebra.unit) == Rational(0));

  // W = x^3, R = (x, x^2): tau^*(1) = 0, tau^* of the odd generator nonzero
  const MatrixFactorization r3 = univariate_power_mf("x", 3, 1, Rational(1));
  const MilnorRing ring3 = milnor_ring(r3.w, {"x"});
  const MFCohomology coh3 = end_cohomology(r3);
  REQUIRE(coh3.dims.even == 1);
  REQUIRE(coh3.dims.odd == 1);
  CHECK(is_zero_vec(boundary_bulk(coh3, ring3, coh3.algebra.unit)));
  CHECK(!is_zero_vec(boundary_bulk(coh3, ring3, unit_vec(2, 1))));
  for (int j = 0; j < coh3.algebra.dim; ++j)
    if (coh3.algebra.parity[j] == 0)
      CHECK(theta_boundary_value(coh3, ring3, unit_vec(2, j)) == Rational(0));
}

TEST_CASE("bulk-boundary is a unital algebra map") {
  const MatrixFactorization r = univariate_power_mf("x", 4, 2, Rational(1));
  const MilnorRing ring = milnor_ring(r.w, {"x"});
  const MFCohomology coh = end_cohomology(r);
  REQUIRE(ring.dim() == 3);

  CHECK(bulk_boundary(coh, ring, ring.normal_form(Poly::constant(1, Rational(1)))) ==
        coh.algebra.unit);
  for (int i = 0; i < ring.dim(); ++i)
    for (int j = 0; j < ring.dim(); ++j) {
      const SuperAlgebra a = ring.algebra();
      VecQ prod(ring.dim());
      for (const auto& [k, v] : a.table[i][j]) prod[k] = v;
      const VecQ lhs = bulk_boundary(coh, ring, prod);
      const VecQ rhs = multiply(coh.algebra, bulk_boundary(coh, ring, unit_vec(ring.dim(), i)),
                                bulk_boundary(coh, ring, unit_vec(ring.dim(), j)));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("str(m_{1,1}) equals the Euler characteristic") {
  for (int s = 2; s <= 5; ++s)
    for (int a = 1; a < s; ++a) {
      const MatrixFactorization r = univariate_power_mf("x", s, a, Rational(1));
      const MFCohomology coh = end_cohomology(r);
      if (coh.algebra.dim == 0) continue;
      CHECK(supertrace(multiplication_operator(coh.algebra, coh.algebra.unit, coh.algebra.unit)) ==
            Rational(euler_characteristic(coh)));
    }
}

TEST_CASE("mf_to_cf passes the full axiom battery on univariate examples") {
  for (int s = 2; s <= 4; ++s)
    for (int a = 1; a < s; ++a) {
      const CFData cf = mf_to_cf(univariate_power_mf("x", s, a, Rational(1)));
      const CheckReport rep = verify_all(cf);
      INFO("W = x^", s, ", a = ", a);
      CHECK(rep.all_passed());
    }
}

TEST_CASE("classification of matrix factorization data") {
  // W = x^2: the bulk is K, the boundary a (1|1) block; semisimple
  ClassificationReport q = classify(mf_to_cf(univariate_power_mf("x", 2, 1, Rational(1))), 0);
  REQUIRE(q.verdict == ClassifyVerdict::Classified);
  REQUIRE(q.summands.size() == 1);
  CHECK(q.summands[0].kind == ElemKind::Q);
  CHECK(q.summands[0].n == 1);
  CHECK(q.summands[0].lambda == Rational(1, 2));
  CHECK(q.summands[0].mu_squared == Rational(1));

  // W = x^3: the Milnor ring K[x]/(x^2) is not semisimple
  ClassificationReport c = classify(mf_to_cf(univariate_power_mf("x", 3, 1, Rational(1))), 0);
  CHECK(c.verdict == ClassifyVerdict::NotSemisimple);
}

TEST_CASE("block-diagonal factorization of x^3 with rank 2") {
  const MatrixFactorization p1 = univariate_power_mf("x", 3, 1, Rational(1));
  MatrixFactorization r;
  r.vars = {"x"};
  r.w = p1.w;
  r.d0 = PolyMat(2, 2, 1);
  r.d1 = PolyMat(2, 2, 1);
  r.d0.at(0, 0) = Poly::monomial(1, {1}, Rational(1));
  r.d0.at(1, 1) = Poly::monomial(1, {2}, Rational(1));
  r.d1.at(0, 0) = Poly::monomial(1, {2}, Rational(1));
  r.d1.at(1, 1) = Poly::monomial(1, {1}, Rational(1));
  REQUIRE(validate_mf(r).ok);
  const MFCohomology coh = end_cohomology(r);
  CHECK(euler_characteristic(coh) == 0);
  check_reps_closed(r, coh);
  CHECK(verify_all(mf_to_cf(r)).all_passed());
}

TEST_CASE("tensor factorizations: validity, Kunneth, and the direct cross-check") {
  const MatrixFactorization rx = univariate_power_mf("x", 2, 1, Rational(1));
  const MatrixFactorization ry = univariate_power_mf("y", 2, 1, Rational(1));
  const MatrixFactorization t = tensor_mf(rx, ry);
  CHECK(validate_mf(t).ok);
  CHECK_THROWS(tensor_mf(rx, rx));  // variable clash

  const MFCohomology kun = end_cohomology(t);
  check_reps_closed(t, kun);
  CHECK(validate(kun.algebra).empty());

  // Kunneth dimensions against the direct cutoff computation at n = 2
  const MFCohomology direct = end_cohomology(strip_factors(t));
  CHECK(kun.dims.even == direct.dims.even);
  CHECK(kun.dims.odd == direct.dims.odd);
  CHECK(kun.dims.even == 2);
  CHECK(kun.dims.odd == 2);

  // the full Cardy-Frobenius data of the tensor passes every check (n = 2)
  CHECK(verify_all(mf_to_cf(t)).all_passed());

  // graded dims multiply for a mixed tensor too
  const MatrixFactorization rc = univariate_power_mf("z", 3, 1, Rational(1));
  const MFCohomology mixed = end_cohomology(tensor_mf(rx, rc));
  CHECK(mixed.dims.even == 2);
  CHECK(mixed.dims.odd == 2);
}

TEST_CASE("vanishing theorem at desk scale") {
  for (int s = 2; s <= 6; ++s)
    for (int a = 1; a < s; ++a) {
      const DaoResult d = check_dao(univariate_power_mf("x", s, a, Rational(1)));
      CHECK(d.vanishes());
    }

  const MatrixFactorization triple = tensor_mf(
      tensor_mf(univariate_power_mf("x", 2, 1, Rational(1)),
                univariate_power_mf("y", 2, 1, Rational(1))),
      univariate_power_mf("z", 2, 1, Rational(1)));
  CHECK(validate_mf(triple).ok);
  const DaoResult d3 = check_dao(triple);
  CHECK(d3.nvars == 3);
  CHECK(d3.vanishes());
  CHECK(d3.dims.even == 4);
  CHECK(d3.dims.odd == 4);

  // even variable count is refused
  const MatrixFactorization pair = tensor_mf(univariate_power_mf("x", 2, 1, Rational(1)),
                                             univariate_power_mf("y", 3, 1, Rational(1)));
  CHECK_THROWS_AS(check_dao(pair), std::invalid_argument);
}

TEST_CASE("full data of an odd triple tensor verifies") {
  const MatrixFactorization triple = tensor_mf(
      tensor_mf(univariate_power_mf("x", 2, 1, Rational(1)),
                univariate_power_mf("y", 2, 1, Rational(1))),
      univariate_power_mf("z", 2, 1, Rational(1)));
  const CFData cf = mf_to_cf(triple);
  CHECK(cf.bulk.dim == 1);
  CHECK(cf.boundary.dim == 8);
  CHECK(verify_all(cf).all_passed());
}

TEST_CASE("tensor data classifies into closure types") {
  const MatrixFactorization rx = univariate_power_mf("x", 2, 1, Rational(1));
  const MatrixFactorization ry = univariate_power_mf("y", 2, 1, Rational(1));
  const MatrixFactorization rz = univariate_power_mf("z", 2, 1, Rational(1));

  // n = 2: one Mat(1,1) block; the bulk residue form carries the orientation
  // sign, so lambda = theta_A(1) = -1/4
  const CFData pair_cf = mf_to_cf(tensor_mf(rx, ry));
  CHECK(pair_cf.theta_bulk[0] == Rational(-1, 4));
  ClassificationReport pr = classify(pair_cf, 0);
  REQUIRE(pr.verdict == ClassifyVerdict::Classified);
  REQUIRE(pr.summands.size() == 1);
  CHECK(pr.summands[0].kind == ElemKind::Mat);
  CHECK(pr.summands[0].n == 1);
  CHECK(pr.summands[0].m == 1);
  CHECK(pr.summands[0].lambda == Rational(-1, 4));

  // n = 3 (odd): the boundary block is Q type, as in the semisimple proof of
  // the vanishing theorem
  ClassificationReport tr = classify(mf_to_cf(tensor_mf(tensor_mf(rx, ry), rz)), 0);
  REQUIRE(tr.verdict == ClassifyVerdict::Classified);
  REQUIRE(tr.summands.size() == 1);
  CHECK(tr.summands[0].kind == ElemKind::Q);
  CHECK(tr.summands[0].n == 2);
  CHECK(tr.summands[0].lambda == Rational(-1, 8));
  CHECK(tr.summands[0].mu_squared == Rational(-1, 4));
}

TEST_CASE("rank-zero factorization edge case") {
  MatrixFactorization r;
  r.vars = {"x"};
  r.w = Poly::monomial(1, {2}, Rational(1));
  r.d0 = PolyMat(0, 0, 1);
  r.d1 = PolyMat(0, 0, 1);
  CHECK(validate_mf(r).ok);
  const MFCohomology coh = end_cohomology(r);
  CHECK(euler_characteristic(coh) == 0);
  CHECK(coh.dims.even == 0);
  CHECK(coh.dims.odd == 0);
}

TEST_CASE("raw potentials in three variables are rejected with the shape statement") {
  const MatrixFactorization triple = tensor_mf(
      tensor_mf(univariate_power_mf("x", 2, 1, Rational(1)),
                univariate_power_mf("y", 2, 1, Rational(1))),
      univariate_power_mf("z", 2, 1, Rational(1)));
  CHECK_THROWS_AS(end_cohomology(strip_factors(triple)), UnsupportedShape);
}
