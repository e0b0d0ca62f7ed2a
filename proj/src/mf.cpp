#include "supercf/mf.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "supercf/linalg.hpp"

namespace supercf {

namespace {

// ---------------------------------------------------------------- utilities

PolyMat big_differential(const MatrixFactorization& r) {
  const int n = r.rank();
  PolyMat d(2 * n, 2 * n, r.w.nvars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.at(i, n + j) = r.d1.at(i, j);  // odd -> even block
      d.at(n + i, j) = r.d0.at(i, j);  // even -> odd block
    }
  return d;
}

Poly matrix_supertrace(const PolyMat& m) {
  const int half = m.rows / 2;
  Poly s(m.data.empty() ? 0 : m.data[0].nvars());
  for (int i = 0; i < m.rows; ++i) s = i < half ? s + m.at(i, i) : s - m.at(i, i);
  return s;
}

int entry_parity(int idx, int half) { return idx < half ? 0 : 1; }

void enumerate_monomials(int nvars, int max_total, Exponents& cur, int pos, int left,
                         std::vector<Exponents>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= left; ++k) {
    cur[pos] = k;
    enumerate_monomials(nvars, max_total, cur, pos + 1, left - k, out);
  }
  cur[pos] = 0;
}

// all monomials of total degree <= N, graded (degree-major) then lexicographic
std::vector<Exponents> monomials_up_to(int nvars, int max_total) {
  std::vector<Exponents> all;
  if (nvars == 0) {
    all.push_back({});
    return all;
  }
  for (int d = 0; d <= max_total; ++d) {
    std::vector<Exponents> layer;
    Exponents cur(nvars, 0);
    enumerate_monomials(nvars, d, cur, 0, d, layer);
    for (auto& e : layer) {
      int total = 0;
      for (int v : e) total += v;
      if (total == d) all.push_back(e);
    }
  }
  return all;
}

struct SectorSpace {
  int size2r = 0;  // 2r
  std::vector<std::pair<int, int>> slots;
  std::vector<Exponents> monos;
  std::map<Exponents, int> mono_index;

  int dim() const { return int(slots.size() * monos.size()); }
  int index(int slot, int mono) const { return slot * int(monos.size()) + mono; }
};

SectorSpace make_sector(int size2r, int parity, int nvars, int cutoff) {
  SectorSpace s;
  s.size2r = size2r;
  const int half = size2r / 2;
  for (int i = 0; i < size2r; ++i)
    for (int j = 0; j < size2r; ++j)
      if ((entry_parity(i, half) + entry_parity(j, half)) % 2 == parity) s.slots.emplace_back(i, j);
  s.monos = monomials_up_to(nvars, cutoff);
  for (int k = 0; k < int(s.monos.size()); ++k) s.mono_index[s.monos[k]] = k;
  return s;
}

VecQ encode_matrix(const PolyMat& m, const SectorSpace& s) {
  VecQ v(s.dim());
  const int half = m.rows / 2;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const Poly& p = m.at(i, j);
      if (p.is_zero()) continue;
      auto slot = std::find(s.slots.begin(), s.slots.end(), std::pair(i, j));
      if (slot == s.slots.end())
        throw std::invalid_argument("encode_matrix: entry outside the requested parity sector");
      const int si = int(slot - s.slots.begin());
      for (const auto& [e, c] : p.terms()) {
        auto it = s.mono_index.find(e);
        if (it == s.mono_index.end())
          throw std::invalid_argument("encode_matrix: entry exceeds the degree cutoff");
        v[s.index(si, it->second)] = c;
      }
    }
  (void)half;
  return v;
}

PolyMat decode_matrix(const VecQ& v, const SectorSpace& s, int nvars) {
  PolyMat m(s.size2r, s.size2r, nvars);
  for (int si = 0; si < int(s.slots.size()); ++si)
    for (int k = 0; k < int(s.monos.size()); ++k) {
      const Rational& c = v[s.index(si, k)];
      if (!c.is_zero()) m.at(s.slots[si].first, s.slots[si].second) =
          m.at(s.slots[si].first, s.slots[si].second) + Poly::monomial(nvars, s.monos[k], c);
    }
  return m;
}

}  // namespace

// ------------------------------------------------------------- construction

MatrixFactorization univariate_power_mf(const std::string& var, int s, int a, const Rational& c) {
  if (s < 2 || a < 1 || a >= s) throw std::invalid_argument("univariate_power_mf: need 1 <= a < s");
  if (c.is_zero()) throw std::invalid_argument("univariate_power_mf: zero coefficient");
  MatrixFactorization r;
  r.vars = {var};
  r.w = Poly::monomial(1, {s}, c);
  r.d0 = PolyMat(1, 1, 1);
  r.d0.at(0, 0) = Poly::monomial(1, {a}, c);
  r.d1 = PolyMat(1, 1, 1);
  r.d1.at(0, 0) = Poly::monomial(1, {s - a}, Rational(1));
  return r;
}

MFValidation validate_mf(const MatrixFactorization& r) {
  const int n = r.rank();
  if (r.d0.rows != n || r.d0.cols != n || r.d1.rows != n || r.d1.cols != n)
    return {false, "d0 and d1 must be square of equal size"};
  if (r.w.nvars() != r.nvars()) return {false, "potential arity does not match the variable list"};
  const PolyMat we = PolyMat::scaled_identity(n, r.w);
  const PolyMat p01 = r.d0 * r.d1;
  const PolyMat p10 = r.d1 * r.d0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(p01.at(i, j) == we.at(i, j)))
        return {false, "(d0 d1)[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] = " + p01.at(i, j).str(r.vars) + " differs from " +
                           we.at(i, j).str(r.vars)};
      if (!(p10.at(i, j) == we.at(i, j)))
        return {false, "(d1 d0)[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] = " + p10.at(i, j).str(r.vars) + " differs from " +
                           we.at(i, j).str(r.vars)};
    }
  return {};
}

// -------------------------------------------------------------- Milnor ring

MilnorRing milnor_ring(const Poly& w, const std::vector<std::string>& vars) {
  if (w.nvars() != int(vars.size()))
    throw std::invalid_argument("milnor_ring: variable list does not match the potential");
  MilnorRing ring;
  ring.w = w;
  ring.vars = vars;
  const int n = w.nvars();

  // The residue form carries the orientation sign (-1)^{n(n-1)/2}; without it
  // the Cardy identity fails on tensor factorizations (see README notes on
  // sign conventions). For n = 1 the sign is +1.
  const Rational orientation = (n * (n - 1) / 2) % 2 == 0 ? Rational(1) : Rational(-1);

  if (n == 1) {
    const int s = w.total_degree();
    if (s < 2) throw UnsupportedShape("univariate potential must have degree >= 2");
    ring.univariate = true;
    ring.powers = {s};
    const Poly dw = w.derivative(0);
    ring.dw_coeffs.assign(s, Rational(0));
    for (const auto& [e, c] : dw.terms()) ring.dw_coeffs[e[0]] = c;
    for (int k = 0; k <= s - 2; ++k) ring.basis.push_back({k});
    ring.theta.assign(s - 1, Rational(0));
    ring.theta[s - 2] = orientation / ring.dw_coeffs[s - 1];
    return ring;
  }

  // Fermat shape: every term is a pure power c_i x_i^{a_i}, a_i >= 2, and
  // every variable occurs exactly once
  if (n < 1) throw UnsupportedShape("potential has no variables");
  ring.powers.assign(n, 0);
  std::vector<Rational> lead(n);
  for (const auto& [e, c] : w.terms()) {
    int var = -1;
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (var >= 0)
        throw UnsupportedShape("supported potentials are univariate or sums of pure powers "
                               "in disjoint variables");
      var = i;
    }
    if (var < 0 || e[var] < 2 || ring.powers[var] != 0)
      throw UnsupportedShape("supported potentials are univariate or sums of pure powers "
                             "in disjoint variables");
    ring.powers[var] = e[var];
    lead[var] = c;
  }
  for (int i = 0; i < n; ++i)
    if (ring.powers[i] == 0)
      throw UnsupportedShape("variable " + vars[i] + " does not occur in the potential");

  // tensor basis of the univariate bases
  std::vector<Exponents> basis = {Exponents(n, 0)};
  for (int i = 0; i < n; ++i) {
    std::vector<Exponents> next;
    for (const auto& b : basis)
      for (int k = 0; k <= ring.powers[i] - 2; ++k) {
        Exponents e = b;
        e[i] = k;
        next.push_back(e);
      }
    basis = std::move(next);
  }
  std::sort(basis.begin(), basis.end());
  ring.basis = std::move(basis);
  ring.theta.assign(ring.basis.size(), Rational(0));
  Rational top(1);
  for (int i = 0; i < n; ++i) top *= lead[i] * Rational(ring.powers[i]);
  for (int b = 0; b < int(ring.basis.size()); ++b) {
    bool is_top = true;
    for (int i = 0; i < n; ++i) is_top = is_top && ring.basis[b][i] == ring.powers[i] - 2;
    if (is_top) ring.theta[b] = orientation / top;
  }
  return ring;
}

int MilnorRing::basis_index(const Exponents& e) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), e);
  if (it == basis.end() || *it != e) return -1;
  return int(it - basis.begin());
}

VecQ MilnorRing::normal_form(const Poly& p) const {
  VecQ coords(dim());
  if (univariate) {
    // remainder modulo W' by exact division
    std::vector<Rational> rem(std::max<std::size_t>(p.total_degree() + 1, 1), Rational(0));
    for (const auto& [e, c] : p.terms()) rem[e[0]] = c;
    const int ds = int(dw_coeffs.size()) - 1;  // deg W'
    for (int k = int(rem.size()) - 1; k >= ds; --k) {
      if (rem[k].is_zero()) continue;
      const Rational f = rem[k] / dw_coeffs[ds];
      for (int i = 0; i <= ds; ++i) rem[k - ds + i] -= f * dw_coeffs[i];
    }
    for (int k = 0; k < dim(); ++k)
      if (k < int(rem.size())) coords[k] = rem[k];
    return coords;
  }
  for (const auto& [e, c] : p.terms()) {
    bool vanishes = false;
    for (int i = 0; i < int(powers.size()); ++i) vanishes = vanishes || e[i] >= powers[i] - 1;
    if (vanishes) continue;
    const int idx = basis_index(e);
    if (idx < 0) throw std::logic_error("MilnorRing: missing basis monomial");
    coords[idx] += c;
  }
  return coords;
}

Poly MilnorRing::poly_of(const VecQ& coords) const {
  if (int(coords.size()) != dim()) throw std::invalid_argument("poly_of: length mismatch");
  Poly p(w.nvars());
  for (int k = 0; k < dim(); ++k)
    if (!coords[k].is_zero()) p.add_term(basis[k], coords[k]);
  return p;
}

SuperAlgebra MilnorRing::algebra() const {
  SuperAlgebra a;
  a.dim = dim();
  a.parity.assign(a.dim, 0);
  a.table.assign(a.dim, std::vector<SparseVec>(a.dim));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      Exponents e(w.nvars());
      for (int v = 0; v < w.nvars(); ++v) e[v] = basis[i][v] + basis[j][v];
      const VecQ coords = normal_form(Poly::monomial(w.nvars(), e, Rational(1)));
      SparseVec sv;
      for (int k = 0; k < a.dim; ++k)
        if (!coords[k].is_zero()) sv.emplace_back(k, coords[k]);
      a.table[i][j] = std::move(sv);
    }
  a.unit = normal_form(Poly::constant(w.nvars(), Rational(1)));
  return a;
}

// --------------------------------------------------------------- cohomology

struct CohContext {
  MatrixFactorization mf;
  PolyMat d_big;
  int deg_w = 0, dmax = 0, cutoff = 0;

  // direct route: reduction solvers cached per (parity, eta cutoff)
  mutable std::map<std::pair<int, int>, std::shared_ptr<LinearSolver>> solvers;
  std::vector<int> rep_parity;
  std::vector<PolyMat> reps;

  // tensor route
  bool tensor_route = false;
  MFCohomology left, right;
  MilnorRing left_ring, right_ring;
  int left_nvars = 0;
  std::vector<std::pair<int, int>> pair_of;           // basis index -> factor indices
  std::map<std::pair<int, int>, int> index_of_pair;   // factor indices -> basis index
};

namespace {

// matrix of D = d phi - (-1)^p phi d from sector(p)@cutoff_in to
// sector(1-p)@(cutoff_in + dmax)
MatQ differential_matrix(const CohContext& ctx, int parity, const SectorSpace& in,
                         const SectorSpace& out) {
  MatQ m(out.dim(), in.dim());
  const int size2r = in.size2r;
  const Rational right_sign = parity == 0 ? Rational(-1) : Rational(1);
  for (int si = 0; si < int(in.slots.size()); ++si) {
    const auto [i, j] = in.slots[si];
    for (int mi = 0; mi < int(in.monos.size()); ++mi) {
      const int col = in.index(si, mi);
      const Exponents& mono = in.monos[mi];
      // left multiplication: rows (k, j) pick up d_big[k][i] * x^mono
      for (int k = 0; k < size2r; ++k) {
        const Poly& q = ctx.d_big.at(k, i);
        if (q.is_zero()) continue;
        auto slot_it = std::find(out.slots.begin(), out.slots.end(), std::pair(k, j));
        if (slot_it == out.slots.end()) continue;
        const int so = int(slot_it - out.slots.begin());
        for (const auto& [e, c] : q.terms()) {
          Exponents sum = mono;
          for (int v = 0; v < int(sum.size()); ++v) sum[v] += e[v];
          m.at(out.index(so, out.mono_index.at(sum)), col) += c;
        }
      }
      // right multiplication: rows (i, l) pick up -(-1)^p x^mono * d_big[j][l]
      for (int l = 0; l < size2r; ++l) {
        const Poly& q = ctx.d_big.at(j, l);
        if (q.is_zero()) continue;
        auto slot_it = std::find(out.slots.begin(), out.slots.end(), std::pair(i, l));
        if (slot_it == out.slots.end()) continue;
        const int so = int(slot_it - out.slots.begin());
        for (const auto& [e, c] : q.terms()) {
          Exponents sum = mono;
          for (int v = 0; v < int(sum.size()); ++v) sum[v] += e[v];
          m.at(out.index(so, out.mono_index.at(sum)), col) += right_sign * c;
        }
      }
    }
  }
  return m;
}

struct SectorCohomology {
  std::vector<VecQ> reps;  // coordinates in sector(p)@N
  SectorSpace space;
};

SectorCohomology sector_cohomology(const CohContext& ctx, int parity, int cutoff) {
  const int nvars = ctx.mf.nvars();
  const int size2r = 2 * ctx.mf.rank();
  SectorCohomology out;
  out.space = make_sector(size2r, parity, nvars, cutoff);
  const SectorSpace out_hi = make_sector(size2r, 1 - parity, nvars, cutoff + ctx.dmax);
  const SectorSpace in_lo = make_sector(size2r, 1 - parity, nvars, cutoff);
  const SectorSpace this_hi = make_sector(size2r, parity, nvars, cutoff + ctx.dmax);

  // closed morphisms at the cutoff
  const MatQ d_here = differential_matrix(ctx, parity, out.space, out_hi);
  std::vector<VecQ> closed = kernel_basis(d_here);

  // image of D on the opposite sector, intersected with the cutoff space
  const MatQ d_other = differential_matrix(ctx, 1 - parity, in_lo, this_hi);
  // rows of this_hi with monomial degree > cutoff must vanish
  std::vector<int> high_rows;
  for (int si = 0; si < int(this_hi.slots.size()); ++si)
    for (int k = 0; k < int(this_hi.monos.size()); ++k) {
      int deg = 0;
      for (int v : this_hi.monos[k]) deg += v;
      if (deg > cutoff) high_rows.push_back(this_hi.index(si, k));
    }
  MatQ high(int(high_rows.size()), d_other.cols());
  for (int r = 0; r < int(high_rows.size()); ++r)
    for (int c = 0; c < d_other.cols(); ++c) high.at(r, c) = d_other.at(high_rows[r], c);

  std::vector<VecQ> exact;
  for (const VecQ& k : kernel_basis(high)) {
    const VecQ img_hi = d_other * k;
    // re-index into sector(p)@cutoff coordinates
    VecQ img(out.space.dim());
    for (int si = 0; si < int(this_hi.slots.size()); ++si)
      for (int mk = 0; mk < int(this_hi.monos.size()); ++mk) {
        const Rational& c = img_hi[this_hi.index(si, mk)];
        if (c.is_zero()) continue;
        auto it = out.space.mono_index.find(this_hi.monos[mk]);
        if (it == out.space.mono_index.end())
          throw std::logic_error("exact image escapes the cutoff despite the high-row kernel");
        auto slot_it = std::find(out.space.slots.begin(), out.space.slots.end(),
                                 this_hi.slots[si]);
        img[out.space.index(int(slot_it - out.space.slots.begin()), it->second)] = c;
      }
    if (!is_zero_vec(img)) exact.push_back(primitive_normalized(img));
  }

  // quotient representatives: closed vectors adding pivots after the exact ones
  std::vector<VecQ> stacked = exact;
  stacked.insert(stacked.end(), closed.begin(), closed.end());
  if (stacked.empty()) return out;
  MatQ stack_m = MatQ::from_columns(stacked, out.space.dim());
  for (int c : pivot_columns(stack_m))
    if (c >= int(exact.size())) out.reps.push_back(stacked[c]);
  return out;
}

VecQ direct_reduce(const CohContext& ctx, const PolyMat& phi, int parity);

SuperAlgebra induced_algebra(const CohContext& ctx, GradedDim dims) {
  SuperAlgebra b;
  b.dim = dims.total();
  b.parity = ctx.rep_parity;
  b.table.assign(b.dim, std::vector<SparseVec>(b.dim));
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j) {
      // boundary product: composition with the parity twist (-1)^{|f||g|};
      // this is the convention under which odd squares match the
      // bulk pairing of their boundary-bulk images
      PolyMat prod = ctx.reps[i] * ctx.reps[j];
      if (ctx.rep_parity[i] == 1 && ctx.rep_parity[j] == 1) prod = -prod;
      const VecQ coords = direct_reduce(ctx, prod, (ctx.rep_parity[i] + ctx.rep_parity[j]) % 2);
      SparseVec sv;
      for (int k = 0; k < b.dim; ++k)
        if (!coords[k].is_zero()) sv.emplace_back(k, coords[k]);
      b.table[i][j] = std::move(sv);
    }
  b.unit = direct_reduce(
      ctx, PolyMat::scaled_identity(2 * ctx.mf.rank(), Poly::constant(ctx.mf.nvars(), Rational(1))),
      0);
  return b;
}

VecQ direct_reduce(const CohContext& ctx, const PolyMat& phi, int parity) {
  const int nvars = ctx.mf.nvars();
  const int size2r = 2 * ctx.mf.rank();
  const int h = int(ctx.reps.size());
  if (size2r == 0) return VecQ(0);

  int eta_cut = std::max(phi.max_total_degree(), ctx.cutoff) + std::max(ctx.deg_w, 1);
  for (int attempt = 0; attempt < 2; ++attempt, eta_cut += std::max(ctx.deg_w, 1)) {
    const int out_cut = eta_cut + ctx.dmax;
    const SectorSpace out_space = make_sector(size2r, parity, nvars, out_cut);
    const SectorSpace eta_space = make_sector(size2r, 1 - parity, nvars, eta_cut);

    auto key = std::make_pair(parity, eta_cut);
    auto it = ctx.solvers.find(key);
    if (it == ctx.solvers.end()) {
      std::vector<VecQ> cols;
      for (int a = 0; a < h; ++a)
        if (ctx.rep_parity[a] == parity) cols.push_back(encode_matrix(ctx.reps[a], out_space));
      const MatQ dmat = differential_matrix(ctx, 1 - parity, eta_space, out_space);
      MatQ sys(out_space.dim(), int(cols.size()) + dmat.cols());
      for (int c = 0; c < int(cols.size()); ++c)
        for (int r = 0; r < out_space.dim(); ++r) sys.at(r, c) = cols[c][r];
      for (int c = 0; c < dmat.cols(); ++c)
        for (int r = 0; r < out_space.dim(); ++r) sys.at(r, int(cols.size()) + c) = dmat.at(r, c);
      it = ctx.solvers.emplace(key, std::make_shared<LinearSolver>(sys)).first;
    }

    const VecQ target = encode_matrix(phi, out_space);
    if (auto sol = it->second->solve(target)) {
      VecQ coords(h);
      int c = 0;
      for (int a = 0; a < h; ++a)
        if (ctx.rep_parity[a] == parity) coords[a] = (*sol)[c++];
      return coords;
    }
  }
  throw std::runtime_error(
      "cohomology reduction failed: morphism not expressible at the working cutoff "
      "(cutoff instability diagnostic)");
}

// tensor representative with the Koszul sign (f (x) g)(r (x) s) =
// (-1)^{|g||r|} f(r) (x) g(s); slot layout [R0S0, R1S1 | R1S0, R0S1]
PolyMat tensor_rep(const PolyMat& f, int fp, const PolyMat& g, int gp, int ra, int rb, int nvars,
                   const std::vector<int>& lmap, const std::vector<int>& rmap) {
  auto slot_pos = [](int rho, int sigma) {
    if (rho == 0 && sigma == 0) return 0;
    if (rho == 1 && sigma == 1) return 1;
    if (rho == 1 && sigma == 0) return 2;
    return 3;
  };
  const int cell = ra * rb;
  PolyMat out(4 * cell, 4 * cell, nvars);
  for (int rho = 0; rho < 2; ++rho)
    for (int rho2 = 0; rho2 < 2; ++rho2)
      for (int sig = 0; sig < 2; ++sig)
        for (int sig2 = 0; sig2 < 2; ++sig2) {
          const int sout = slot_pos(rho, sig);
          const int sin = slot_pos(rho2, sig2);
          const bool negate = gp == 1 && rho2 == 1;
          for (int i = 0; i < ra; ++i)
            for (int j = 0; j < ra; ++j) {
              const Poly& fe = f.at(rho * ra + i, rho2 * ra + j);
              if (fe.is_zero()) continue;
              const Poly fe_emb = embed_poly(fe, nvars, lmap);
              for (int k = 0; k < rb; ++k)
                for (int l = 0; l < rb; ++l) {
                  const Poly& ge = g.at(sig * rb + k, sig2 * rb + l);
                  if (ge.is_zero()) continue;
                  Poly term = fe_emb * embed_poly(ge, nvars, rmap);
                  if (negate) term = -term;
                  out.at(sout * cell + i * rb + k, sin * cell + j * rb + l) =
                      out.at(sout * cell + i * rb + k, sin * cell + j * rb + l) + term;
                }
            }
        }
  return out;
}

MFCohomology kunneth_cohomology(const MatrixFactorization& r);

}  // namespace

MFCohomology end_cohomology(const MatrixFactorization& r) {
  {
    const MFValidation v = validate_mf(r);
    if (!v.ok) throw std::invalid_argument("end_cohomology: invalid factorization: " + v.detail);
  }
  if (!r.factors.empty()) return kunneth_cohomology(r);
  if (r.nvars() > 2)
    throw UnsupportedShape(
        "direct cohomology supports univariate and two-variable potentials; build "
        "factorizations in more variables as tensor products");

  auto ctx = std::make_shared<CohContext>();
  ctx->mf = r;
  ctx->d_big = big_differential(r);
  ctx->deg_w = std::max(r.w.total_degree(), 1);
  ctx->dmax = std::max(ctx->d_big.max_total_degree(), 1);
  ctx->cutoff = 3 * ctx->deg_w;

  MFCohomology coh;
  if (r.rank() == 0) {
    coh.dims = {0, 0};
    coh.algebra.dim = 0;
    coh.ctx = ctx;
    return coh;
  }

  const SectorCohomology even1 = sector_cohomology(*ctx, 0, ctx->cutoff);
  const SectorCohomology odd1 = sector_cohomology(*ctx, 1, ctx->cutoff);
  const SectorCohomology even2 = sector_cohomology(*ctx, 0, ctx->cutoff + ctx->deg_w);
  const SectorCohomology odd2 = sector_cohomology(*ctx, 1, ctx->cutoff + ctx->deg_w);
  if (even1.reps.size() != even2.reps.size() || odd1.reps.size() != odd2.reps.size())
    throw std::runtime_error(
        "cohomology dimensions do not stabilize between cutoffs " +
        std::to_string(ctx->cutoff) + " and " + std::to_string(ctx->cutoff + ctx->deg_w));

  coh.dims = {int(even1.reps.size()), int(odd1.reps.size())};
  for (const VecQ& v : even1.reps) {
    ctx->reps.push_back(decode_matrix(v, even1.space, r.nvars()));
    ctx->rep_parity.push_back(0);
  }
  for (const VecQ& v : odd1.reps) {
    ctx->reps.push_back(decode_matrix(v, odd1.space, r.nvars()));
    ctx->rep_parity.push_back(1);
  }
  coh.reps = ctx->reps;
  coh.algebra = induced_algebra(*ctx, coh.dims);
  coh.ctx = ctx;
  return coh;
}

namespace {

MFCohomology kunneth_cohomology(const MatrixFactorization& r) {
  if (r.factors.size() != 2) throw std::logic_error("kunneth_cohomology: expected two factors");
  const MatrixFactorization& a = *r.factors[0];
  const MatrixFactorization& b = *r.factors[1];

  auto ctx = std::make_shared<CohContext>();
  ctx->mf = r;
  ctx->d_big = big_differential(r);
  ctx->deg_w = std::max(r.w.total_degree(), 1);
  ctx->dmax = std::max(ctx->d_big.max_total_degree(), 1);
  ctx->tensor_route = true;
  ctx->left = end_cohomology(a);
  ctx->right = end_cohomology(b);
  ctx->left_ring = milnor_ring(a.w, a.vars);
  ctx->right_ring = milnor_ring(b.w, b.vars);
  ctx->left_nvars = a.nvars();

  std::vector<int> lmap(a.nvars()), rmap(b.nvars());
  for (int i = 0; i < a.nvars(); ++i) lmap[i] = i;
  for (int i = 0; i < b.nvars(); ++i) rmap[i] = a.nvars() + i;

  const SuperAlgebra& la = ctx->left.algebra;
  const SuperAlgebra& ra = ctx->right.algebra;

  MFCohomology coh;
  // basis pairs, even sector then odd sector, left-major within each group
  for (int want = 0; want < 2; ++want)
    for (int pl = 0; pl < 2; ++pl) {
      const int pr = (want + pl) % 2;
      for (int i = 0; i < la.dim; ++i) {
        if (la.parity[i] != pl) continue;
        for (int j = 0; j < ra.dim; ++j) {
          if (ra.parity[j] != pr) continue;
          ctx->index_of_pair[{i, j}] = int(ctx->pair_of.size());
          ctx->pair_of.emplace_back(i, j);
          ctx->rep_parity.push_back(want);
          ctx->reps.push_back(tensor_rep(ctx->left.reps[i], pl, ctx->right.reps[j], pr,
                                         a.rank(), b.rank(), r.nvars(), lmap, rmap));
        }
      }
    }

  int evens = 0;
  for (int p : ctx->rep_parity) evens += p == 0;
  coh.dims = {evens, int(ctx->rep_parity.size()) - evens};

  SuperAlgebra alg;
  alg.dim = int(ctx->pair_of.size());
  alg.parity = ctx->rep_parity;
  alg.table.assign(alg.dim, std::vector<SparseVec>(alg.dim));
  for (int x = 0; x < alg.dim; ++x)
    for (int y = 0; y < alg.dim; ++y) {
      const auto [a1, a2] = ctx->pair_of[x];
      const auto [b1, b2] = ctx->pair_of[y];
      // twisted products tensor with the sign (-1)^{|f_left||g_right|}
      const bool negate = la.parity[a1] == 1 && ra.parity[b2] == 1;
      SparseVec sv;
      for (const auto& [k1, v1] : la.table[a1][b1])
        for (const auto& [k2, v2] : ra.table[a2][b2]) {
          auto it = ctx->index_of_pair.find({k1, k2});
          if (it == ctx->index_of_pair.end())
            throw std::logic_error("kunneth: product leaves the graded basis");
          sv.emplace_back(it->second, negate ? -(v1 * v2) : v1 * v2);
        }
      std::sort(sv.begin(), sv.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      alg.table[x][y] = std::move(sv);
    }
  alg.unit.assign(alg.dim, Rational(0));
  for (int x = 0; x < alg.dim; ++x) {
    const auto [a1, a2] = ctx->pair_of[x];
    const Rational u = la.unit[a1] * ra.unit[a2];
    if (!u.is_zero()) alg.unit[x] = u;
  }
  coh.algebra = std::move(alg);
  coh.reps = ctx->reps;
  coh.ctx = ctx;
  return coh;
}

VecQ times_identity_class(const MFCohomology& coh, const Poly& p);

VecQ tensor_times_identity(const CohContext& ctx, const Poly& p) {
  VecQ coords(ctx.pair_of.size());
  const int n1 = ctx.left_nvars;
  for (const auto& [e, c] : p.terms()) {
    Exponents e1(e.begin(), e.begin() + n1);
    Exponents e2(e.begin() + n1, e.end());
    const VecQ u1 = times_identity_class(ctx.left, Poly::monomial(n1, e1, Rational(1)));
    const VecQ u2 =
        times_identity_class(ctx.right, Poly::monomial(int(e2.size()), e2, Rational(1)));
    for (int i = 0; i < int(u1.size()); ++i) {
      if (u1[i].is_zero()) continue;
      for (int j = 0; j < int(u2.size()); ++j) {
        if (u2[j].is_zero()) continue;
        auto it = ctx.index_of_pair.find({i, j});
        if (it == ctx.index_of_pair.end())
          throw std::logic_error("tensor bulk image leaves the graded basis");
        coords[it->second] += c * u1[i] * u2[j];
      }
    }
  }
  return coords;
}

// class of p * identity in the cohomology basis
VecQ times_identity_class(const MFCohomology& coh, const Poly& p) {
  const CohContext& ctx = *coh.ctx;
  if (ctx.tensor_route) return tensor_times_identity(ctx, p);
  return direct_reduce(ctx, PolyMat::scaled_identity(2 * ctx.mf.rank(), p), 0);
}

}  // namespace

VecQ boundary_bulk(const MFCohomology& coh, const MilnorRing& ring, const VecQ& y_coords) {
  const CohContext& ctx = *coh.ctx;
  const int n = ctx.mf.nvars();
  const int size2r = 2 * ctx.mf.rank();
  if (int(y_coords.size()) != coh.algebra.dim)
    throw std::invalid_argument("boundary_bulk: coordinate length mismatch");
  if (size2r == 0) return VecQ(ring.dim());

  PolyMat rep(size2r, size2r, n);
  for (int j = 0; j < coh.algebra.dim; ++j)
    if (!y_coords[j].is_zero()) rep = rep + coh.reps[j].scaled(y_coords[j]);

  PolyMat m = rep;
  for (int v = 0; v < n; ++v) m = m * ctx.d_big.derivative(v);
  Poly s = matrix_supertrace(m);
  if ((n * (n + 1) / 2) % 2 == 1) s = -s;
  return ring.normal_form(s);
}

Rational theta_boundary_value(const MFCohomology& coh, const MilnorRing& ring,
                              const VecQ& y_coords) {
  return dot(ring.theta, boundary_bulk(coh, ring, y_coords));
}

VecQ bulk_boundary(const MFCohomology& coh, const MilnorRing& ring, const VecQ& x_coords) {
  return times_identity_class(coh, ring.poly_of(x_coords));
}

long euler_characteristic(const MFCohomology& coh) { return coh.dims.even - coh.dims.odd; }

MatrixFactorization tensor_mf(const MatrixFactorization& a, const MatrixFactorization& b) {
  std::set<std::string> names(a.vars.begin(), a.vars.end());
  for (const auto& v : b.vars)
    if (!names.insert(v).second)
      throw std::invalid_argument("tensor_mf: variable '" + v + "' appears in both factors");

  MatrixFactorization t;
  t.vars = a.vars;
  t.vars.insert(t.vars.end(), b.vars.begin(), b.vars.end());
  const int nv = int(t.vars.size());
  std::vector<int> lmap(a.nvars()), rmap(b.nvars());
  for (int i = 0; i < a.nvars(); ++i) lmap[i] = i;
  for (int i = 0; i < b.nvars(); ++i) rmap[i] = a.nvars() + i;
  t.w = embed_poly(a.w, nv, lmap) + embed_poly(b.w, nv, rmap);

  const int ra = a.rank(), rb = b.rank();
  const int cell = ra * rb;
  // T0 = [R0S0 | R1S1], T1 = [R1S0 | R0S1]; each slot has rank ra*rb with
  // pair index i*rb + k. d(r (x) s) = d_R r (x) s + (-1)^{|r|} r (x) d_S s.
  t.d0 = PolyMat(2 * cell, 2 * cell, nv);
  t.d1 = PolyMat(2 * cell, 2 * cell, nv);
  auto put = [&](PolyMat& dst, int row_slot, int col_slot, const PolyMat& fa, bool from_left,
                 bool negate) {
    for (int i = 0; i < (from_left ? ra : rb); ++i)
      for (int j = 0; j < (from_left ? ra : rb); ++j) {
        const Poly& src = fa.at(i, j);
        if (src.is_zero()) continue;
        Poly p = embed_poly(src, nv, from_left ? lmap : rmap);
        if (negate) p = -p;
        for (int d = 0; d < (from_left ? rb : ra); ++d) {
          const int row = from_left ? i * rb + d : d * rb + i;
          const int col = from_left ? j * rb + d : d * rb + j;
          dst.at(row_slot * cell + row, col_slot * cell + col) =
              dst.at(row_slot * cell + row, col_slot * cell + col) + p;
        }
      }
  };
  // d_T0 : [R0S0, R1S1] -> [R1S0, R0S1]
  put(t.d0, 0, 0, a.d0, true, false);   // d0a (x) I : R0S0 -> R1S0
  put(t.d0, 0, 1, b.d1, false, true);   // -I (x) d1b : R1S1 -> R1S0
  put(t.d0, 1, 0, b.d0, false, false);  // I (x) d0b : R0S0 -> R0S1
  put(t.d0, 1, 1, a.d1, true, false);   // d1a (x) I : R1S1 -> R0S1
  // d_T1 : [R1S0, R0S1] -> [R0S0, R1S1]
  put(t.d1, 0, 0, a.d1, true, false);   // d1a (x) I : R1S0 -> R0S0
  put(t.d1, 0, 1, b.d1, false, false);  // I (x) d1b : R0S1 -> R0S0
  put(t.d1, 1, 0, b.d0, false, true);   // -I (x) d0b : R1S0 -> R1S1
  put(t.d1, 1, 1, a.d0, true, false);   // d0a (x) I : R0S1 -> R1S1
  t.factors = {std::make_shared<const MatrixFactorization>(a),
               std::make_shared<const MatrixFactorization>(b)};
  return t;
}

CFData mf_to_cf(const MatrixFactorization& r) {
  const MFValidation v = validate_mf(r);
  if (!v.ok) throw std::invalid_argument("mf_to_cf: invalid factorization: " + v.detail);
  const MilnorRing ring = milnor_ring(r.w, r.vars);
  const MFCohomology coh = end_cohomology(r);

  CFData cf;
  cf.bulk = ring.algebra();
  cf.theta_bulk = ring.theta;
  cf.boundary = coh.algebra;

  cf.theta_boundary.assign(cf.boundary.dim, Rational(0));
  MatQ upper(cf.bulk.dim, cf.boundary.dim);
  for (int j = 0; j < cf.boundary.dim; ++j) {
    VecQ e(cf.boundary.dim);
    e[j] = Rational(1);
    const VecQ image = boundary_bulk(coh, ring, e);
    for (int i = 0; i < cf.bulk.dim; ++i) upper.at(i, j) = image[i];
    cf.theta_boundary[j] = dot(ring.theta, image);
  }
  cf.boundary_to_bulk = upper;

  cf.bulk_to_boundary = MatQ(cf.boundary.dim, cf.bulk.dim);
  for (int k = 0; k < cf.bulk.dim; ++k) {
    VecQ e(cf.bulk.dim);
    e[k] = Rational(1);
    const VecQ image = bulk_boundary(coh, ring, e);
    for (int j = 0; j < cf.boundary.dim; ++j) cf.bulk_to_boundary.at(j, k) = image[j];
  }
  return cf;
}

DaoResult check_dao(const MatrixFactorization& r) {
  if (r.nvars() % 2 == 0)
    throw std::invalid_argument(
        "check_dao: the vanishing statement requires an odd number of variables (got " +
        std::to_string(r.nvars()) + ")");
  const MFCohomology coh = end_cohomology(r);
  DaoResult out;
  out.nvars = r.nvars();
  out.dims = coh.dims;
  out.chi = euler_characteristic(coh);
  return out;
}

}  // namespace supercf
