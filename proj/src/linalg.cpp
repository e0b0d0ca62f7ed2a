#include "supercf/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace supercf {

MatQ MatQ::from_columns(const std::vector<VecQ>& cols, int rows) {
  MatQ m(rows, int(cols.size()));
  for (int j = 0; j < int(cols.size()); ++j) {
    if (int(cols[j].size()) != rows) throw std::invalid_argument("from_columns: ragged input");
    for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

VecQ MatQ::row(int i) const {
  VecQ r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

VecQ MatQ::col(int j) const {
  VecQ c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

MatQ MatQ::transposed() const {
  MatQ t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

MatQ MatQ::operator*(const MatQ& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("MatQ: dimension mismatch in product");
  MatQ r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rational& bkj = o.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

VecQ MatQ::operator*(const VecQ& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("MatQ: dimension mismatch in mat*vec");
  VecQ r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

MatQ MatQ::operator+(const MatQ& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("MatQ: shape mismatch");
  MatQ r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

MatQ MatQ::operator-(const MatQ& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("MatQ: shape mismatch");
  MatQ r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

MatQ MatQ::scaled(const Rational& c) const {
  MatQ r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
  return r;
}

bool MatQ::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

// Integer working matrix for fraction-free elimination. Each input row is
// scaled by the lcm of its denominators (solution sets are unaffected).
struct ZMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<mpz_class>> m;
};

ZMat clear_denominators(const MatQ& a, const VecQ* rhs) {
  ZMat z;
  z.rows = a.rows();
  z.cols = a.cols() + (rhs ? 1 : 0);
  z.m.assign(z.rows, std::vector<mpz_class>(z.cols));
  for (int i = 0; i < z.rows; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.at(i, j).den().get_mpz_t());
    if (rhs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*rhs)[i].den().get_mpz_t());
    for (int j = 0; j < a.cols(); ++j)
      z.m[i][j] = a.at(i, j).num() * (l / a.at(i, j).den());
    if (rhs) z.m[i][a.cols()] = (*rhs)[i].num() * (l / (*rhs)[i].den());
  }
  return z;
}

// Fraction-free (Bareiss) row echelon form. Pivot rule: columns left to
// right, topmost nonzero entry among the remaining rows. Only the first
// `pivot_limit` columns are eligible as pivots (lets a right-hand side ride
// along). Returns the pivot columns in order.
std::vector<int> bareiss_echelon(ZMat& z, int pivot_limit) {
  std::vector<int> pivots;
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < pivot_limit && r < z.rows; ++c) {
    int p = -1;
    for (int i = r; i < z.rows; ++i)
      if (z.m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(z.m[r], z.m[p]);
    const mpz_class pivot = z.m[r][c];
    for (int i = r + 1; i < z.rows; ++i) {
      if (z.m[i][c] == 0) {
        // still rescale the row so the Bareiss invariant holds
        for (int j = c + 1; j < z.cols; ++j) {
          mpz_class t = z.m[i][j] * pivot;
          mpz_divexact(z.m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      const mpz_class head = z.m[i][c];
      for (int j = c + 1; j < z.cols; ++j) {
        mpz_class t = z.m[i][j] * pivot - head * z.m[r][j];
        mpz_divexact(z.m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      z.m[i][c] = 0;
    }
    prev = pivot;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Back-substitution on an echelon form: pivot variables solved top-up, free
// variables fixed by `free_value` (index -> value; defaults to zero).
VecQ back_substitute(const ZMat& z, const std::vector<int>& pivots, int ncols,
                     const std::vector<Rational>& rhs_rows,
                     const std::vector<std::pair<int, Rational>>& fixed_free) {
  VecQ x(ncols);
  for (auto& [idx, val] : fixed_free) x[idx] = val;
  for (int i = int(pivots.size()) - 1; i >= 0; --i) {
    const int pc = pivots[i];
    Rational s = rhs_rows[i];
    for (int j = pc + 1; j < ncols; ++j)
      if (z.m[i][j] != 0 && !x[j].is_zero()) s -= Rational(z.m[i][j]) * x[j];
    x[pc] = s / Rational(z.m[i][pc]);
  }
  return x;
}

}  // namespace

int rank(const MatQ& a) {
  ZMat z = clear_denominators(a, nullptr);
  return int(bareiss_echelon(z, a.cols()).size());
}

std::vector<int> pivot_columns(const MatQ& a) {
  ZMat z = clear_denominators(a, nullptr);
  return bareiss_echelon(z, a.cols());
}

std::optional<VecQ> solve_linear(const MatQ& a, const VecQ& b) {
  if (int(b.size()) != a.rows()) throw std::invalid_argument("solve_linear: rhs length mismatch");
  ZMat z = clear_denominators(a, &b);
  std::vector<int> pivots = bareiss_echelon(z, a.cols());
  for (int i = int(pivots.size()); i < z.rows; ++i)
    if (z.m[i][a.cols()] != 0) return std::nullopt;
  std::vector<Rational> rhs(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) rhs[i] = Rational(z.m[i][a.cols()]);
  return back_substitute(z, pivots, a.cols(), rhs, {});
}

std::vector<VecQ> kernel_basis(const MatQ& a) {
  ZMat z = clear_denominators(a, nullptr);
  std::vector<int> pivots = bareiss_echelon(z, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<VecQ> basis;
  std::vector<Rational> zero_rhs(pivots.size());
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    VecQ v = back_substitute(z, pivots, a.cols(), zero_rhs, {{f, Rational(1)}});
    basis.push_back(primitive_normalized(v));
  }
  return basis;
}

std::optional<MatQ> inverse(const MatQ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  const int n = a.rows();
  MatQ aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Rational(1);
  }
  ZMat z = clear_denominators(aug, nullptr);
  std::vector<int> pivots = bareiss_echelon(z, n);
  if (int(pivots.size()) < n) return std::nullopt;
  MatQ inv(n, n);
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = Rational(z.m[i][n + k]);
    VecQ x = back_substitute(z, pivots, n, rhs, {});
    for (int i = 0; i < n; ++i) inv.at(i, k) = x[i];
  }
  return inv;
}

VecQ primitive_normalized(const VecQ& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.num() * (l / x.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return v;
  int lead_sign = 0;
  for (const auto& x : v)
    if (!x.is_zero()) { lead_sign = x.sign(); break; }
  if (lead_sign < 0) g = -g;
  VecQ out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rational(l, g);
  return out;
}

LinearSolver::LinearSolver(const MatQ& a) : n_(a.rows()), m_(a.cols()) {
  MatQ aug(n_, m_ + n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < m_; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, m_ + i) = Rational(1);
  }
  // Note: the identity block must not be row-scaled, so no denominator
  // clearing here; plain rational Gauss-Jordan with the same pivot rule.
  rref_ = aug;
  int r = 0;
  for (int c = 0; c < m_ && r < n_; ++c) {
    int p = -1;
    for (int i = r; i < n_; ++i)
      if (!rref_.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m_ + n_; ++j) std::swap(rref_.at(p, j), rref_.at(r, j));
    Rational inv_piv = Rational(1) / rref_.at(r, c);
    for (int j = 0; j < m_ + n_; ++j) rref_.at(r, j) *= inv_piv;
    for (int i = 0; i < n_; ++i) {
      if (i == r || rref_.at(i, c).is_zero()) continue;
      Rational f = rref_.at(i, c);
      for (int j = 0; j < m_ + n_; ++j)
        if (!rref_.at(r, j).is_zero()) rref_.at(i, j) -= f * rref_.at(r, j);
    }
    pivot_cols_.push_back(c);
    ++r;
  }
}

std::optional<VecQ> LinearSolver::solve(const VecQ& b) const {
  if (int(b.size()) != n_) throw std::invalid_argument("LinearSolver: rhs length mismatch");
  // transformed rhs: (L b)_i where L is the recorded row transform
  VecQ tb(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!rref_.at(i, m_ + j).is_zero() && !b[j].is_zero()) tb[i] += rref_.at(i, m_ + j) * b[j];
  const int r = int(pivot_cols_.size());
  for (int i = r; i < n_; ++i)
    if (!tb[i].is_zero()) return std::nullopt;
  VecQ x(m_);
  for (int i = 0; i < r; ++i) {
    // row i is reduced: unit pivot, zeros in other pivot columns; free
    // variables are set to zero so the pivot value is the transformed rhs
    x[pivot_cols_[i]] = tb[i];
  }
  // correct for nonzero entries in free columns (none are used: free vars 0)
  return x;
}

}  // namespace supercf
