#pragma once

#include <map>
#include <string>
#include <vector>

#include "supercf/rational.hpp"

namespace supercf {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over Q with a fixed number of variables.
/// No zero coefficients are stored; term order is the std::map order on
/// exponent vectors, so iteration is deterministic.
class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_[Exponents(nvars, 0)] = c;
    return p;
  }
  static Poly monomial(int nvars, const Exponents& e, const Rational& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_[e] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  int total_degree() const;  // -1 for the zero polynomial
  Rational coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  Poly derivative(int var) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Exponents, Rational> terms_;
};

/// Dense matrix of polynomials, row-major.
struct PolyMat {
  int rows = 0, cols = 0;
  std::vector<Poly> data;

  PolyMat() = default;
  PolyMat(int r, int c, int nvars) : rows(r), cols(c), data(std::size_t(r) * c, Poly(nvars)) {}
  static PolyMat scaled_identity(int n, const Poly& w);

  Poly& at(int i, int j) { return data[std::size_t(i) * cols + j]; }
  const Poly& at(int i, int j) const { return data[std::size_t(i) * cols + j]; }

  PolyMat operator*(const PolyMat& o) const;
  PolyMat operator+(const PolyMat& o) const;
  PolyMat operator-(const PolyMat& o) const;
  PolyMat operator-() const;
  PolyMat scaled(const Rational& c) const;
  PolyMat derivative(int var) const;
  bool operator==(const PolyMat& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
  bool is_zero() const;
  int max_total_degree() const;  // -1 when all entries vanish
};

/// Re-embeds a polynomial into a larger variable space; var_map[i] is the new
/// index of the i-th old variable.
Poly embed_poly(const Poly& p, int new_nvars, const std::vector<int>& var_map);

}  // namespace supercf
