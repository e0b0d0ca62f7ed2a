#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "supercf/cf.hpp"
#include "supercf/poly.hpp"

namespace supercf {

/// Raised when a potential is outside the supported family (univariate of
/// degree >= 2, or a sum of pure powers in disjoint variables; wider
/// multivariate input only through tensor products).
class UnsupportedShape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pair of square polynomial matrices with d0 d1 = d1 d0 = W E. The module
/// underneath is K^{r|r} over the polynomial ring; the odd differential is
/// the block matrix [[0, d1], [d0, 0]]. Tensor-built factorizations remember
/// their factors, which unlocks the Kunneth route for their cohomology.
struct MatrixFactorization {
  std::vector<std::string> vars;
  Poly w{0};
  PolyMat d0, d1;
  std::vector<std::shared_ptr<const MatrixFactorization>> factors;

  int rank() const { return d0.rows; }
  int nvars() const { return int(vars.size()); }
};

/// Convenience builder for W = c x^s with the factor pair (c x^a, x^{s-a}).
MatrixFactorization univariate_power_mf(const std::string& var, int s, int a, const Rational& c);

struct MFValidation {
  bool ok = true;
  std::string detail;  // offending entry when not ok
};

/// Exact check of d0 d1 = d1 d0 = W E plus shape constraints.
MFValidation validate_mf(const MatrixFactorization& r);

/// K[x_1..x_n]/(dW/dx_1, ..., dW/dx_n) with an explicit monomial basis and a
/// linear, idempotent normal form. theta is the residue form on the basis:
/// top-coefficient extraction against the Jacobian leading coefficient.
struct MilnorRing {
  Poly w{0};
  std::vector<std::string> vars;
  std::vector<Exponents> basis;
  VecQ theta;
  bool univariate = false;
  std::vector<Rational> dw_coeffs;  // univariate: coefficients of W'
  std::vector<int> powers;          // per-variable exponent a_i (univariate: {deg W})

  int dim() const { return int(basis.size()); }
  VecQ normal_form(const Poly& p) const;
  Poly poly_of(const VecQ& coords) const;
  SuperAlgebra algebra() const;  // purely even
  int basis_index(const Exponents& e) const;
};

MilnorRing milnor_ring(const Poly& w, const std::vector<std::string>& vars);

/// Cohomology of the endomorphism dg-ring: representative matrices (even
/// classes first), the induced product, and enough context to reduce new
/// morphisms to the basis.
struct MFCohomology {
  GradedDim dims;
  std::vector<PolyMat> reps;
  SuperAlgebra algebra;
  std::shared_ptr<const struct CohContext> ctx;
};

/// Degree-cutoff linear algebra at N = 3 deg W with a stability double-check
/// at N + deg W (univariate and two-variable potentials); tensor-built
/// factorizations go through the Kunneth route instead.
MFCohomology end_cohomology(const MatrixFactorization& r);

/// tau^*: class of Y maps to (-1)^{n(n+1)/2} str(Y d(d_R)/dx_1 ... d(d_R)/dx_n)
/// reduced in the Milnor ring.
VecQ boundary_bulk(const MFCohomology& coh, const MilnorRing& ring, const VecQ& y_coords);

/// theta_B(Y): the residue of the same supertrace expression; carries the
/// tau^* prefactor so the two forms are adjoint (see README notes on signs).
Rational theta_boundary_value(const MFCohomology& coh, const MilnorRing& ring,
                              const VecQ& y_coords);

/// tau_*: X maps to the class of X * identity.
VecQ bulk_boundary(const MFCohomology& coh, const MilnorRing& ring, const VecQ& x_coords);

long euler_characteristic(const MFCohomology& coh);

/// Graded tensor product over disjoint variable sets; the potential adds.
MatrixFactorization tensor_mf(const MatrixFactorization& a, const MatrixFactorization& b);

/// Assembles the full Cardy-Frobenius data of a factorization.
CFData mf_to_cf(const MatrixFactorization& r);

struct DaoResult {
  int nvars = 0;
  GradedDim dims;
  long chi = 0;
  bool vanishes() const { return chi == 0; }
};

/// Euler-characteristic vanishing check; requires an odd number of
/// variables (throws std::invalid_argument otherwise).
DaoResult check_dao(const MatrixFactorization& r);

}  // namespace supercf
