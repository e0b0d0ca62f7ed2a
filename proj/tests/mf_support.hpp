#pragma once

#include "supercf/mf.hpp"

// Test-only oracles, kept independent of the library's computation paths.
namespace supercf::testing {

/// Residue of X dx / W' for W = lead * x^s via the Laurent expansion of the
/// quotient around 0: every term a_k x^k of X contributes a_k / (s*lead) at
/// exponent k - (s-1), and the residue reads off the exponent -1.
inline Rational residue_laurent_oracle(int s, const Rational& lead, const Poly& x) {
  Rational res;
  const Rational dw_lead = Rational(s) * lead;
  for (const auto& [e, c] : x.terms()) {
    const int exponent_after_division = e.at(0) - (s - 1);
    if (exponent_after_division == -1) res += c / dw_lead;
  }
  return res;
}

/// Closed-form cohomology dimensions for W = x^s with the factor pair
/// (x^a, x^{s-a}): both sectors have dimension min(a, s-a).
inline int power_pair_cohomology_dim(int s, int a) { return std::min(a, s - a); }

}  // namespace supercf::testing
