#include "supercf/cleared.hpp"

#include "supercf/linalg.hpp"

namespace supercf {

ClearedAlgebra ClearedAlgebra::from(const SuperAlgebra& a) {
  ClearedAlgebra c;
  c.dim = a.dim;
  c.alg = &a;
  for (const auto& row : a.table)
    for (const auto& sv : row)
      for (const auto& [k, v] : sv) mpz_lcm(c.denom.get_mpz_t(), c.denom.get_mpz_t(), v.den().get_mpz_t());
  c.num.assign(std::size_t(a.dim) * a.dim * a.dim, mpz_class(0));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [k, v] : a.table[i][j])
        c.num[(std::size_t(i) * a.dim + j) * a.dim + k] = v.num() * (c.denom / v.den());
  return c;
}

bool nonsingular_mod_probe(const std::vector<std::vector<mpz_class>>& m) {
  const unsigned long p = 2305843009213693951UL;  // 2^61 - 1
  const int n = int(m.size());
  std::vector<std::vector<unsigned long>> a(n, std::vector<unsigned long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      unsigned long r = mpz_fdiv_ui(m[i][j].get_mpz_t(), p);
      a[i][j] = r;
    }
  auto mulmod = [p](unsigned long x, unsigned long y) {
    return (unsigned long)((unsigned __int128)x * y % p);
  };
  auto powmod = [&](unsigned long b, unsigned long e) {
    unsigned long r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) return false;
    std::swap(a[piv], a[c]);
    const unsigned long inv = powmod(a[c][c], p - 2);
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const unsigned long f = mulmod(a[i][c], inv);
      for (int j = c; j < n; ++j) {
        unsigned long sub = mulmod(f, a[c][j]);
        a[i][j] = (a[i][j] >= sub) ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
  }
  return true;
}

bool full_rank_exact(const MatQ& g) {
  if (g.rows() != g.cols()) return false;
  const int n = g.rows();
  if (n == 0) return true;
  std::vector<std::vector<mpz_class>> z(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.at(i, j).den().get_mpz_t());
    for (int j = 0; j < n; ++j) z[i][j] = g.at(i, j).num() * (l / g.at(i, j).den());
  }
  if (nonsingular_mod_probe(z)) return true;  // sound certificate
  return rank(g) == n;
}

}  // namespace supercf
