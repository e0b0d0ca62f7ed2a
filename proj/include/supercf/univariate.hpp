#pragma once

#include <string>
#include <utility>
#include <vector>

#include "supercf/superalgebra.hpp"

namespace supercf {

/// Univariate polynomial over Q: coefficients ascending, no trailing zeros.
using QPoly = std::vector<Rational>;

QPoly qpoly_trim(QPoly p);
int qpoly_deg(const QPoly& p);  // -1 for the zero polynomial
Rational qpoly_eval(const QPoly& p, const Rational& x);
QPoly qpoly_derivative(const QPoly& p);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b);
QPoly qpoly_monic(QPoly p);
QPoly qpoly_gcd(QPoly a, QPoly b);  // monic
std::string qpoly_to_string(const QPoly& p, const std::string& var);

/// Monic minimal polynomial of an element of a commutative unital algebra
/// (first linear dependence among the powers of t).
QPoly minimal_polynomial(const SuperAlgebra& alg, const VecQ& t);

struct RationalRoots {
  std::vector<Rational> roots;  // distinct, ascending
  QPoly cofactor;               // monic factor with no rational roots
};

/// All rational roots of a square-free polynomial, exactly: Sturm isolation,
/// then a simplest-rational search in each isolating interval with the
/// denominator bound from the rational root theorem. No integer factoring.
RationalRoots rational_roots_squarefree(const QPoly& p);

/// The simplest rational in the open interval (lo, hi): minimal denominator,
/// then minimal numerator magnitude (Stern-Brocot descent).
Rational simplest_in(const Rational& lo, const Rational& hi);

}  // namespace supercf
