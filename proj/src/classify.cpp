#include "supercf/classify.hpp"

#include <algorithm>
#include <stdexcept>

#include "supercf/univariate.hpp"

namespace supercf {

namespace {

VecQ basis_vec(int dim, int i) {
  VecQ v(dim);
  v[i] = Rational(1);
  return v;
}

bool is_perfect_square(int v, int& root) {
  if (v < 0) return false;
  int r = 0;
  while (r * r < v) ++r;
  root = r;
  return r * r == v;
}

// canonical summand order for deterministic reports
bool summand_less(const ElementarySummand& a, const ElementarySummand& b) {
  auto key = [](const ElementarySummand& s) { return std::tuple(int(s.kind), s.n, s.m); };
  if (key(a) != key(b)) return key(a) < key(b);
  return a.lambda < b.lambda;
}

}  // namespace

std::string verdict_name(ClassifyVerdict v) {
  switch (v) {
    case ClassifyVerdict::Classified: return "classified";
    case ClassifyVerdict::NotSemisimple: return "not_semisimple";
    case ClassifyVerdict::NotSplit: return "not_split";
    case ClassifyVerdict::AxiomViolation: return "axiom_violation";
  }
  return "?";
}

std::variant<std::vector<VecQ>, SplitFailure> primitive_idempotents_commutative(
    const SuperAlgebra& a, Rng& rng) {
  if (a.dim == 0) return std::vector<VecQ>{};
  if (a.odd_dim() != 0)
    return SplitFailure{ClassifyVerdict::NotSemisimple,
                        "bulk algebra has an odd part (odd supercommutative elements are "
                        "nilpotent, so the algebra cannot be semisimple)"};
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      if (a.table[i][j] != a.table[j][i])
        return SplitFailure{ClassifyVerdict::NotSemisimple,
                            "algebra is not commutative, so it is not a product of copies of K"};
  if (!is_semisimple(a))
    return SplitFailure{ClassifyVerdict::NotSemisimple, "trace form is degenerate"};

  std::string last_factor;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const long range = 2 + attempt;
    VecQ t(a.dim);
    for (auto& c : t) c = Rational(rng.next_int(-range, range));

    const QPoly p = minimal_polynomial(a, t);
    if (qpoly_deg(p) < a.dim) continue;  // t does not separate the summands
    if (qpoly_deg(qpoly_gcd(p, qpoly_derivative(p))) > 0)
      return SplitFailure{ClassifyVerdict::NotSemisimple,
                          "minimal polynomial of a separating element is not square-free"};

    const RationalRoots rr = rational_roots_squarefree(p);
    if (qpoly_deg(rr.cofactor) > 0) {
      last_factor = qpoly_to_string(rr.cofactor, "t");
      continue;
    }

    // Lagrange interpolation at the roots gives the idempotents.
    std::vector<VecQ> idems;
    for (const Rational& ri : rr.roots) {
      VecQ e = a.unit;
      for (const Rational& rj : rr.roots) {
        if (rj == ri) continue;
        VecQ shifted(a.dim);
        for (int k = 0; k < a.dim; ++k) shifted[k] = t[k] - rj * a.unit[k];
        e = multiply(a, e, shifted);
        const Rational scale = Rational(1) / (ri - rj);
        for (auto& c : e) c *= scale;
      }
      idems.push_back(std::move(e));
    }

    // exactness audit: orthogonal idempotents summing to the unit
    VecQ total(a.dim);
    for (const auto& e : idems)
      for (int k = 0; k < a.dim; ++k) total[k] += e[k];
    if (total != a.unit) continue;
    bool ok = true;
    for (std::size_t i = 0; i < idems.size() && ok; ++i)
      for (std::size_t j = 0; j < idems.size() && ok; ++j) {
        const VecQ prod = multiply(a, idems[i], idems[j]);
        ok = (i == j) ? prod == idems[i] : is_zero_vec(prod);
      }
    if (ok) return idems;
  }

  return SplitFailure{ClassifyVerdict::NotSplit,
                      last_factor.empty()
                          ? "no separating element found within the retry budget"
                          : "minimal polynomial has the non-split factor " + last_factor};
}

std::variant<std::vector<BoundaryBlock>, SplitFailure> decompose_boundary(const SuperAlgebra& b,
                                                                          Rng& rng) {
  if (b.dim == 0) return std::vector<BoundaryBlock>{};
  if (!is_semisimple(b))
    return SplitFailure{ClassifyVerdict::NotSemisimple, "boundary trace form is degenerate"};

  const std::vector<VecQ> center = graded_center_even(b);
  std::vector<int> center_parity(center.size(), 0);
  const SuperAlgebra center_alg = subalgebra_on_basis(b, center, center_parity, b.unit);

  auto idems = primitive_idempotents_commutative(center_alg, rng);
  if (auto* fail = std::get_if<SplitFailure>(&idems)) {
    SplitFailure f = *fail;
    f.detail = "even graded center: " + f.detail;
    return f;
  }

  std::vector<BoundaryBlock> blocks;
  for (const VecQ& zc : std::get<std::vector<VecQ>>(idems)) {
    // central idempotent back in parent coordinates
    VecQ z(b.dim);
    for (int j = 0; j < int(center.size()); ++j)
      for (int k = 0; k < b.dim; ++k) z[k] += zc[j] * center[j][k];

    BoundaryBlock blk;
    blk.central_idempotent = z;
    // the ideal z*B, split by parity so every basis vector is homogeneous
    for (int parity_pass = 0; parity_pass < 2; ++parity_pass) {
      std::vector<VecQ> images;
      for (int i = 0; i < b.dim; ++i)
        if (b.parity[i] == parity_pass) images.push_back(multiply(b, z, basis_vec(b.dim, i)));
      MatQ m = MatQ::from_columns(images, b.dim);
      for (int c : pivot_columns(m)) {
        blk.basis.push_back(primitive_normalized(images[c]));
        blk.parity.push_back(parity_pass);
      }
    }
    blk.algebra = subalgebra_on_basis(b, blk.basis, blk.parity, z);
    blk.unit_in_block = blk.algebra.unit;
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

std::optional<BlockType> identify_block_type(int even_dim, int odd_dim) {
  int s = 0, d = 0;
  if (is_perfect_square(even_dim + odd_dim, s) && is_perfect_square(even_dim - odd_dim, d) &&
      (s + d) % 2 == 0) {
    return BlockType{ElemKind::Mat, (s + d) / 2, (s - d) / 2};
  }
  int n = 0;
  if (even_dim == odd_dim && is_perfect_square(even_dim, n) && n >= 1)
    return BlockType{ElemKind::Q, n, 0};
  return std::nullopt;
}

FormLine form_proportionality(const SuperAlgebra& block, const VecQ& theta_restricted) {
  FormLine out;
  const int d = block.dim;
  // unknowns theta(b_l); equations theta(b_i b_j) - (-1)^{|i||j|} theta(b_j b_i) = 0
  MatQ sys(d * d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int row = i * d + j;
      const bool odd_pair = block.parity[i] == 1 && block.parity[j] == 1;
      for (const auto& [l, v] : block.table[i][j]) sys.at(row, l) += v;
      for (const auto& [l, v] : block.table[j][i]) sys.at(row, l) += odd_pair ? v : -v;
    }
  const std::vector<VecQ> space = kernel_basis(sys);
  out.space_is_line = space.size() == 1;
  if (!out.space_is_line) return out;
  out.generator = space[0];

  int lead = -1;
  for (int l = 0; l < d; ++l)
    if (!out.generator[l].is_zero()) { lead = l; break; }
  if (lead < 0) return out;
  out.coefficient = theta_restricted[lead] / out.generator[lead];
  VecQ scaled(d);
  for (int l = 0; l < d; ++l) scaled[l] = out.coefficient * out.generator[l];
  out.theta_in_line = scaled == theta_restricted;
  return out;
}

IdempotentMatching match_idempotents(const CFData& cf, const std::vector<VecQ>& idempotents,
                                     const std::vector<BoundaryBlock>& blocks) {
  IdempotentMatching out;
  out.block_of_idempotent.assign(idempotents.size(), -1);
  std::vector<int> hit(blocks.size(), 0);
  for (std::size_t i = 0; i < idempotents.size(); ++i) {
    const VecQ image = cf.bulk_to_boundary * idempotents[i];
    if (is_zero_vec(image)) continue;
    int found = -1;
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if (image == blocks[j].central_idempotent) { found = int(j); break; }
    if (found < 0) {
      out.violation = Witness{{long(i)}, Rational(0), Rational(0),
                              "tau_*(e_i) is neither zero nor a single block unit"};
      return out;
    }
    out.block_of_idempotent[i] = found;
    if (++hit[found] > 1) {
      out.violation = Witness{{long(i), long(found)}, Rational(0), Rational(0),
                              "two bulk idempotents map to the same block unit"};
      return out;
    }
  }
  for (std::size_t j = 0; j < blocks.size(); ++j)
    if (hit[j] == 0) {
      out.violation = Witness{{long(j)}, Rational(0), Rational(0),
                              "no bulk idempotent maps to this block unit"};
      return out;
    }
  return out;
}

ClassificationReport classify(const CFData& cf_in, std::uint64_t seed) {
  ClassificationReport report;

  report.checks = verify_all(cf_in);
  if (!report.checks.all_passed()) {
    report.verdict = ClassifyVerdict::AxiomViolation;
    for (const auto& c : report.checks.checks)
      if (!c.passed) { report.detail = "axiom check failed: " + c.name; break; }
    return report;
  }
  const CFData cf = ensure_adjoint(cf_in);

  if (!is_semisimple(cf.bulk)) {
    report.verdict = ClassifyVerdict::NotSemisimple;
    report.detail = "bulk algebra is not semisimple";
    return report;
  }
  if (!is_semisimple(cf.boundary)) {
    report.verdict = ClassifyVerdict::NotSemisimple;
    report.detail = "boundary algebra is not semisimple";
    return report;
  }

  Rng master(seed);
  Rng rng_bulk = master.fork(1);
  Rng rng_boundary = master.fork(2);

  auto idems_or = primitive_idempotents_commutative(cf.bulk, rng_bulk);
  if (auto* fail = std::get_if<SplitFailure>(&idems_or)) {
    report.verdict = fail->verdict;
    report.detail = "bulk: " + fail->detail;
    return report;
  }
  const auto& idempotents = std::get<std::vector<VecQ>>(idems_or);

  auto blocks_or = decompose_boundary(cf.boundary, rng_boundary);
  if (auto* fail = std::get_if<SplitFailure>(&blocks_or)) {
    report.verdict = fail->verdict;
    report.detail = "boundary: " + fail->detail;
    return report;
  }
  const auto& blocks = std::get<std::vector<BoundaryBlock>>(blocks_or);

  // block typing and form rigidity
  std::vector<BlockType> types;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const SuperAlgebra& blk = blocks[j].algebra;
    auto type = identify_block_type(blk.even_dim(), blk.odd_dim());
    if (!type) {
      report.verdict = ClassifyVerdict::AxiomViolation;
      report.detail = "block " + std::to_string(j) + " has dimension signature (" +
                      std::to_string(blk.even_dim()) + "," + std::to_string(blk.odd_dim()) +
                      ") matching neither simple type";
      return report;
    }
    types.push_back(*type);

    VecQ theta_restricted(blk.dim);
    for (int w = 0; w < blk.dim; ++w)
      theta_restricted[w] = dot(cf.theta_boundary, blocks[j].basis[w]);
    const FormLine line = form_proportionality(blk, theta_restricted);
    if (!line.space_is_line) {
      report.verdict = ClassifyVerdict::AxiomViolation;
      report.detail = "block " + std::to_string(j) +
                      ": symmetric-form space is not one-dimensional (block misidentified)";
      return report;
    }
    if (!line.theta_in_line || line.coefficient.is_zero()) {
      report.verdict = ClassifyVerdict::AxiomViolation;
      report.detail = "block " + std::to_string(j) +
                      ": boundary form does not restrict to the rigid symmetric form";
      return report;
    }
  }

  const IdempotentMatching matching = match_idempotents(cf, idempotents, blocks);
  if (matching.violation) {
    report.verdict = ClassifyVerdict::AxiomViolation;
    report.detail = "idempotent matching: " + matching.violation->note;
    report.checks.checks.push_back(CheckResult{"idempotent_matching", false, matching.violation});
    return report;
  }

  // assemble summands; the blockwise Cardy check pins the parameter relation
  LinearSolver idem_solver(MatQ::from_columns(idempotents, cf.bulk.dim));
  std::vector<ElementarySummand> summands;
  for (std::size_t i = 0; i < idempotents.size(); ++i) {
    const Rational lambda = dot(cf.theta_bulk, multiply(cf.bulk, idempotents[i], idempotents[i]));
    const int j = matching.block_of_idempotent[i];
    if (j < 0) {
      ElementarySummand s;
      s.kind = ElemKind::Triv;
      s.lambda = lambda;
      s.bulk_idempotent = idempotents[i];
      summands.push_back(std::move(s));
      continue;
    }
    const BoundaryBlock& blk = blocks[j];

    CFData sub;
    sub.bulk.dim = 1;
    sub.bulk.parity = {0};
    sub.bulk.table = {{SparseVec{{0, Rational(1)}}}};
    sub.bulk.unit = {Rational(1)};
    sub.theta_bulk = {lambda};
    sub.boundary = blk.algebra;
    sub.theta_boundary.assign(blk.algebra.dim, Rational(0));
    for (int w = 0; w < blk.algebra.dim; ++w)
      sub.theta_boundary[w] = dot(cf.theta_boundary, blk.basis[w]);
    sub.bulk_to_boundary = MatQ(blk.algebra.dim, 1);
    for (int w = 0; w < blk.algebra.dim; ++w) sub.bulk_to_boundary.at(w, 0) = blk.unit_in_block[w];

    // restrict tau^* to the block; its image must stay on this idempotent
    MatQ upper(1, blk.algebra.dim);
    for (int w = 0; w < blk.algebra.dim; ++w) {
      const VecQ image = *cf.boundary_to_bulk * blk.basis[w];
      auto coords = idem_solver.solve(image);
      if (!coords) {
        report.verdict = ClassifyVerdict::AxiomViolation;
        report.detail = "tau^* image leaves the span of the bulk idempotents";
        return report;
      }
      for (std::size_t l = 0; l < idempotents.size(); ++l)
        if (l != std::size_t(i) && !(*coords)[l].is_zero()) {
          report.verdict = ClassifyVerdict::AxiomViolation;
          report.detail = "tau^* of a block element touches a foreign idempotent";
          return report;
        }
      upper.at(0, w) = (*coords)[i];
    }
    sub.boundary_to_bulk = upper;

    CheckResult cardy = check_cardy(sub);
    cardy.name = "cardy_block_" + std::to_string(j);
    report.checks.checks.push_back(cardy);
    if (!cardy.passed) {
      report.verdict = ClassifyVerdict::AxiomViolation;
      report.detail = "blockwise Cardy identity fails on block " + std::to_string(j);
      return report;
    }

    ElementarySummand s;
    s.kind = types[j].kind;
    s.n = types[j].n;
    s.m = types[j].m;
    s.lambda = lambda;
    s.mu_squared = s.kind == ElemKind::Mat ? lambda : lambda * Rational(2);
    s.bulk_idempotent = idempotents[i];
    s.block_unit = blk.central_idempotent;
    summands.push_back(std::move(s));
  }

  std::sort(summands.begin(), summands.end(), summand_less);
  report.summands = std::move(summands);
  report.verdict = ClassifyVerdict::Classified;
  return report;
}

}  // namespace supercf
