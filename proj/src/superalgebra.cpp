#include "supercf/superalgebra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "supercf/cleared.hpp"

namespace supercf {

namespace {

void check_dim(const SuperAlgebra& alg, const VecQ& v, const char* what) {
  if (int(v.size()) != alg.dim)
    throw std::invalid_argument(std::string(what) + ": coordinate length does not match dim");
}

SparseVec to_sparse(const VecQ& v) {
  SparseVec s;
  for (int k = 0; k < int(v.size()); ++k)
    if (!v[k].is_zero()) s.emplace_back(k, v[k]);
  return s;
}

}  // namespace

VecQ multiply(const SuperAlgebra& alg, const VecQ& a, const VecQ& b) {
  check_dim(alg, a, "multiply");
  check_dim(alg, b, "multiply");
  VecQ out(alg.dim);
  for (int i = 0; i < alg.dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < alg.dim; ++j) {
      if (b[j].is_zero()) continue;
      const Rational c = a[i] * b[j];
      for (const auto& [k, v] : alg.table[i][j]) out[k] += c * v;
    }
  }
  return out;
}

MatQ left_mult_matrix(const SuperAlgebra& alg, const VecQ& a) {
  check_dim(alg, a, "left_mult_matrix");
  MatQ m(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < alg.dim; ++j)
      for (const auto& [k, v] : alg.table[i][j]) m.at(k, j) += a[i] * v;
  }
  return m;
}

MatQ right_mult_matrix(const SuperAlgebra& alg, const VecQ& a) {
  check_dim(alg, a, "right_mult_matrix");
  MatQ m(alg.dim, alg.dim);
  for (int j = 0; j < alg.dim; ++j) {
    if (a[j].is_zero()) continue;
    for (int i = 0; i < alg.dim; ++i)
      for (const auto& [k, v] : alg.table[i][j]) m.at(k, i) += a[j] * v;
  }
  return m;
}

int element_parity(const SuperAlgebra& alg, const VecQ& a) {
  int p = -1;
  for (int i = 0; i < alg.dim; ++i) {
    if (a[i].is_zero()) continue;
    if (p < 0)
      p = alg.parity[i];
    else if (p != alg.parity[i])
      return -1;
  }
  return p;
}

std::vector<std::string> validate(const SuperAlgebra& alg) {
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };

  if (alg.dim < 0) fail("dim is negative");
  if (int(alg.parity.size()) != alg.dim) fail("parity vector length != dim");
  if (int(alg.unit.size()) != alg.dim) fail("unit length != dim");
  if (int(alg.table.size()) != alg.dim) fail("structure constant table has wrong shape");
  for (const auto& row : alg.table)
    if (int(row.size()) != alg.dim) fail("structure constant table has wrong shape");
  if (!problems.empty()) return problems;

  for (int i = 0; i < alg.dim; ++i)
    if (alg.parity[i] != 0 && alg.parity[i] != 1) fail("parity entries must be 0 or 1");
  for (int i = 0; i + 1 < alg.dim; ++i)
    if (alg.parity[i] > alg.parity[i + 1]) {
      fail("basis must list even vectors before odd vectors");
      break;
    }
  if (!problems.empty()) return problems;

  // grading of the structure constants
  for (int i = 0; i < alg.dim && problems.empty(); ++i)
    for (int j = 0; j < alg.dim && problems.empty(); ++j)
      for (const auto& [k, v] : alg.table[i][j]) {
        if (k < 0 || k >= alg.dim) { fail("structure constant index out of range"); break; }
        if (v.is_zero()) { fail("explicit zero stored in structure constants"); break; }
        if (alg.parity[k] != (alg.parity[i] + alg.parity[j]) % 2) {
          fail("grading violated at (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k) + ")");
          break;
        }
      }
  if (!problems.empty()) return problems;

  // unit law
  for (int i = 0; i < alg.dim; ++i) {
    VecQ e(alg.dim);
    e[i] = Rational(1);
    if (multiply(alg, alg.unit, e) != e || multiply(alg, e, alg.unit) != e) {
      fail("unit law fails on basis index " + std::to_string(i));
      break;
    }
  }
  if (!problems.empty()) return problems;

  // associativity over all basis triples
  for (int i = 0; i < alg.dim; ++i) {
    VecQ bi(alg.dim);
    bi[i] = Rational(1);
    for (int j = 0; j < alg.dim; ++j) {
      VecQ bj(alg.dim);
      bj[j] = Rational(1);
      const VecQ ij = multiply(alg, bi, bj);
      for (int k = 0; k < alg.dim; ++k) {
        VecQ bk(alg.dim);
        bk[k] = Rational(1);
        if (multiply(alg, ij, bk) != multiply(alg, bi, multiply(alg, bj, bk))) {
          fail("associativity fails on triple (" + std::to_string(i) + "," + std::to_string(j) +
               "," + std::to_string(k) + ")");
          return problems;
        }
      }
    }
  }
  return problems;
}

SuperAlgebra build_mat(int n, int m) {
  if (n < 0 || m < 0 || n + m < 1) throw std::invalid_argument("build_mat: need n+m >= 1");
  const int d = n + m;
  // even units first: (i,j) with i,j on the same side of n, row-major
  std::vector<std::pair<int, int>> units;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if ((i < n) == (j < n)) units.emplace_back(i, j);
  const int evens = int(units.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if ((i < n) != (j < n)) units.emplace_back(i, j);

  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < int(units.size()); ++a) index[units[a]] = a;

  SuperAlgebra alg;
  alg.dim = d * d;
  alg.parity.assign(alg.dim, 0);
  for (int a = evens; a < alg.dim; ++a) alg.parity[a] = 1;
  alg.table.assign(alg.dim, std::vector<SparseVec>(alg.dim));
  for (int a = 0; a < alg.dim; ++a)
    for (int b = 0; b < alg.dim; ++b) {
      const auto& [i, j] = units[a];
      const auto& [k, l] = units[b];
      if (j == k) alg.table[a][b] = {{index[{i, l}], Rational(1)}};
    }
  alg.unit.assign(alg.dim, Rational(0));
  for (int i = 0; i < d; ++i) alg.unit[index[{i, i}]] = Rational(1);
  return alg;
}

SuperAlgebra build_q(int n) {
  if (n < 1) throw std::invalid_argument("build_q: need n >= 1");
  const int nn = n * n;
  auto idx = [n](int i, int j) { return i * n + j; };  // E_ij, row-major

  SuperAlgebra alg;
  alg.dim = 2 * nn;
  alg.parity.assign(alg.dim, 0);
  for (int a = nn; a < alg.dim; ++a) alg.parity[a] = 1;
  alg.table.assign(alg.dim, std::vector<SparseVec>(alg.dim));
  // (E_ij s^p)(E_kl s^q) = delta_jk E_il s^{p+q}, with s^2 = 1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (j != k) continue;
          const int e = idx(i, l);
          alg.table[idx(i, j)][idx(k, l)] = {{e, Rational(1)}};
          alg.table[idx(i, j)][nn + idx(k, l)] = {{nn + e, Rational(1)}};
          alg.table[nn + idx(i, j)][idx(k, l)] = {{nn + e, Rational(1)}};
          alg.table[nn + idx(i, j)][nn + idx(k, l)] = {{e, Rational(1)}};
        }
  alg.unit.assign(alg.dim, Rational(0));
  for (int i = 0; i < n; ++i) alg.unit[idx(i, i)] = Rational(1);
  return alg;
}

std::vector<VecQ> graded_center_even(const SuperAlgebra& alg) {
  std::vector<int> even_idx;
  for (int i = 0; i < alg.dim; ++i)
    if (alg.parity[i] == 0) even_idx.push_back(i);
  if (even_idx.empty()) return {};

  // rows: commutator coordinate k of [z, b_j] for all j; cols: even coords
  MatQ sys(alg.dim * alg.dim, int(even_idx.size()));
  for (int c = 0; c < int(even_idx.size()); ++c) {
    const int i = even_idx[c];
    for (int j = 0; j < alg.dim; ++j) {
      for (const auto& [k, v] : alg.table[i][j]) sys.at(j * alg.dim + k, c) += v;
      for (const auto& [k, v] : alg.table[j][i]) sys.at(j * alg.dim + k, c) -= v;
    }
  }
  std::vector<VecQ> out;
  for (const VecQ& z : kernel_basis(sys)) {
    VecQ full(alg.dim);
    for (int c = 0; c < int(even_idx.size()); ++c) full[even_idx[c]] = z[c];
    out.push_back(full);
  }
  return out;
}

bool is_semisimple(const SuperAlgebra& alg) {
  const int d = alg.dim;
  if (d == 0) return true;
  const ClearedAlgebra c = ClearedAlgebra::from(alg);

  // trace form G[i][j] = tr(L_i L_j) = sum_{k,l} c[i][l][k] c[j][k][l];
  // scaling by the common denominator does not change the rank.
  // Fast path: full rank modulo a large prime certifies nondegeneracy.
  {
    const unsigned long p = 2305843009213693951UL;  // 2^61 - 1
    std::vector<unsigned long> tm(std::size_t(d) * d * d);
    for (std::size_t idx = 0; idx < tm.size(); ++idx)
      tm[idx] = mpz_fdiv_ui(c.num[idx].get_mpz_t(), p);
    auto at = [&](int i, int j, int k) -> unsigned long {
      return tm[(std::size_t(i) * d + j) * d + k];
    };
    std::vector<std::vector<mpz_class>> g(d, std::vector<mpz_class>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        unsigned __int128 s = 0;
        for (int l = 0; l < d; ++l)
          for (int k = 0; k < d; ++k) {
            const unsigned long a = at(i, l, k);
            if (a == 0) continue;
            const unsigned long b = at(j, k, l);
            if (b == 0) continue;
            s += (unsigned __int128)a % p * (b % p) % p;
          }
        g[i][j] = (unsigned long)(s % p);
      }
    if (nonsingular_mod_probe(g)) return true;
  }

  // Exact fallback.
  MatQ g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      mpz_class s = 0;
      for (int l = 0; l < d; ++l)
        for (const auto& [k, v] : alg.table[i][l]) {
          (void)v;
          const mpz_class& a = c.at(i, l, k);
          const mpz_class& b = c.at(j, k, l);
          if (a != 0 && b != 0) s += a * b;
        }
      g.at(i, j) = Rational(s);
    }
  return rank(g) == d;
}

DirectSum direct_sum_algebras(const SuperAlgebra& a, const SuperAlgebra& b) {
  DirectSum out;
  SuperAlgebra& s = out.algebra;
  s.dim = a.dim + b.dim;
  out.embed_left.assign(a.dim, -1);
  out.embed_right.assign(b.dim, -1);
  // even vectors of a, even of b, odd of a, odd of b
  int pos = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < a.dim; ++i)
      if (a.parity[i] == pass) { out.embed_left[i] = pos++; s.parity.push_back(pass); }
    for (int i = 0; i < b.dim; ++i)
      if (b.parity[i] == pass) { out.embed_right[i] = pos++; s.parity.push_back(pass); }
  }
  s.table.assign(s.dim, std::vector<SparseVec>(s.dim));
  auto fill = [&s](const SuperAlgebra& src, const std::vector<int>& em) {
    for (int i = 0; i < src.dim; ++i)
      for (int j = 0; j < src.dim; ++j) {
        SparseVec sv;
        for (const auto& [k, v] : src.table[i][j]) sv.emplace_back(em[k], v);
        std::sort(sv.begin(), sv.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        s.table[em[i]][em[j]] = std::move(sv);
      }
  };
  fill(a, out.embed_left);
  fill(b, out.embed_right);
  out.unit_left.assign(s.dim, Rational(0));
  out.unit_right.assign(s.dim, Rational(0));
  for (int i = 0; i < a.dim; ++i) out.unit_left[out.embed_left[i]] = a.unit[i];
  for (int i = 0; i < b.dim; ++i) out.unit_right[out.embed_right[i]] = b.unit[i];
  s.unit.assign(s.dim, Rational(0));
  for (int i = 0; i < s.dim; ++i) s.unit[i] = out.unit_left[i] + out.unit_right[i];
  return out;
}

BasisChange apply_basis_change(const SuperAlgebra& alg, const MatQ& t) {
  if (t.rows() != alg.dim || t.cols() != alg.dim)
    throw std::invalid_argument("apply_basis_change: matrix shape mismatch");
  auto tinv = inverse(t);
  if (!tinv) throw std::invalid_argument("apply_basis_change: matrix is singular");
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      if (alg.parity[i] != alg.parity[j] && !t.at(i, j).is_zero())
        throw std::invalid_argument("apply_basis_change: matrix must preserve parity");

  BasisChange out;
  out.change = t;
  out.change_inverse = *tinv;
  SuperAlgebra& s = out.algebra;
  s.dim = alg.dim;
  s.parity = alg.parity;
  s.unit = out.change_inverse * alg.unit;
  s.table.assign(s.dim, std::vector<SparseVec>(s.dim));

  // new_table[i][j] = T^{-1} (T e_i * T e_j); assemble column-by-column via
  // multiplication matrices: C_i = T^{-1} L_{b'_i} T.
  for (int i = 0; i < s.dim; ++i) {
    MatQ li = left_mult_matrix(alg, t.col(i));
    MatQ ci = out.change_inverse * (li * t);
    for (int j = 0; j < s.dim; ++j) {
      SparseVec sv;
      for (int k = 0; k < s.dim; ++k)
        if (!ci.at(k, j).is_zero()) sv.emplace_back(k, ci.at(k, j));
      s.table[i][j] = std::move(sv);
    }
  }
  return out;
}

BasisChange random_graded_basis_change(const SuperAlgebra& alg, std::uint64_t seed) {
  Rng rng(seed);
  const int d = alg.dim;
  while (true) {
    MatQ t(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (alg.parity[i] == alg.parity[j]) t.at(i, j) = Rational(rng.next_int(-3, 3));
    if (rank(t) == d) return apply_basis_change(alg, t);
  }
}

SuperAlgebra subalgebra_on_basis(const SuperAlgebra& parent, const std::vector<VecQ>& basis,
                                 const std::vector<int>& basis_parity, const VecQ& unit_parent) {
  const int d = int(basis.size());
  if (int(basis_parity.size()) != d)
    throw std::invalid_argument("subalgebra_on_basis: parity length mismatch");
  SuperAlgebra sub;
  sub.dim = d;
  sub.parity = basis_parity;
  sub.table.assign(d, std::vector<SparseVec>(d));
  if (d == 0) return sub;

  LinearSolver expand(MatQ::from_columns(basis, parent.dim));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto coords = expand.solve(multiply(parent, basis[i], basis[j]));
      if (!coords)
        throw std::invalid_argument("subalgebra_on_basis: span is not closed under product");
      SparseVec sv;
      for (int k = 0; k < d; ++k)
        if (!(*coords)[k].is_zero()) sv.emplace_back(k, (*coords)[k]);
      sub.table[i][j] = std::move(sv);
    }
  auto u = expand.solve(unit_parent);
  if (!u) throw std::invalid_argument("subalgebra_on_basis: unit is not in the span");
  sub.unit = *u;
  return sub;
}

}  // namespace supercf
