#include "supercf/io.hpp"

#include <algorithm>

namespace supercf {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) throw InputError(where + ": missing field '" + name + "'");
  return *it;
}

int int_field(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_number_integer()) throw InputError(where + ": field '" + name + "' must be an integer");
  return v.get<int>();
}

Rational rational_field(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string())
    throw InputError(where + ": rationals must be strings like \"p/q\" (or integers)");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

VecQ vector_field(const Json& v, int expected, const std::string& where) {
  if (!v.is_array() || int(v.size()) != expected)
    throw InputError(where + ": expected an array of length " + std::to_string(expected));
  VecQ out(expected);
  for (int i = 0; i < expected; ++i)
    out[i] = rational_field(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

Json vector_to_json(const VecQ& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

MatQ matrix_field(const Json& v, int rows, int cols, const std::string& where) {
  if (!v.is_array() || int(v.size()) != rows)
    throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  MatQ m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const VecQ row = vector_field(v[i], cols, where + "[" + std::to_string(i) + "]");
    for (int j = 0; j < cols; ++j) m.at(i, j) = row[j];
  }
  return m;
}

Json matrix_to_json(const MatQ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Poly poly_field(const Json& v, int nvars, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": polynomial must be a list of [exponents, coeff]");
  Poly p(nvars);
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string at = where + "[" + std::to_string(t) + "]";
    const Json& term = v[t];
    if (!term.is_array() || term.size() != 2)
      throw InputError(at + ": each term is [exponent-vector, coefficient]");
    const Json& ev = term[0];
    if (!ev.is_array() || int(ev.size()) != nvars)
      throw InputError(at + ": exponent vector must have one entry per variable");
    Exponents e(nvars);
    for (int i = 0; i < nvars; ++i) {
      if (!ev[i].is_number_integer() || ev[i].get<int>() < 0)
        throw InputError(at + ": exponents must be non-negative integers");
      e[i] = ev[i].get<int>();
    }
    p.add_term(e, rational_field(term[1], at));
  }
  return p;
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json ev = Json::array();
    for (int x : e) ev.push_back(x);
    terms.push_back(Json::array({ev, c.str()}));
  }
  return terms;
}

}  // namespace

Json algebra_to_json(const SuperAlgebra& a) {
  Json j;
  j["dim"] = a.dim;
  Json parity = Json::array();
  for (int p : a.parity) parity.push_back(p);
  j["parity"] = parity;
  j["unit"] = vector_to_json(a.unit);
  Json sc = Json::array();
  for (int i = 0; i < a.dim; ++i)
    for (int j2 = 0; j2 < a.dim; ++j2)
      for (const auto& [k, v] : a.table[i][j2]) sc.push_back(Json::array({i, j2, k, v.str()}));
  j["structure_constants"] = sc;
  return j;
}

SuperAlgebra algebra_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  SuperAlgebra a;
  a.dim = int_field(j, "dim", where);
  if (a.dim < 0) throw InputError(where + ": dim must be non-negative");
  const Json& par = field(j, "parity", where);
  if (!par.is_array() || int(par.size()) != a.dim)
    throw InputError(where + ": parity must list one 0/1 entry per basis vector");
  for (int i = 0; i < a.dim; ++i) {
    if (!par[i].is_number_integer() || (par[i].get<int>() != 0 && par[i].get<int>() != 1))
      throw InputError(where + ": parity entries must be 0 or 1");
    a.parity.push_back(par[i].get<int>());
  }
  for (int i = 0; i + 1 < a.dim; ++i)
    if (a.parity[i] > a.parity[i + 1])
      throw InputError(where + ": basis must list even vectors before odd vectors");
  a.unit = vector_field(field(j, "unit", where), a.dim, where + ".unit");
  a.table.assign(a.dim, std::vector<SparseVec>(a.dim));
  const Json& sc = field(j, "structure_constants", where);
  if (!sc.is_array()) throw InputError(where + ".structure_constants: expected an array");
  for (std::size_t t = 0; t < sc.size(); ++t) {
    const std::string at = where + ".structure_constants[" + std::to_string(t) + "]";
    const Json& e = sc[t];
    if (!e.is_array() || e.size() != 4) throw InputError(at + ": expected [i, j, k, coeff]");
    for (int q = 0; q < 3; ++q)
      if (!e[q].is_number_integer() || e[q].get<int>() < 0 || e[q].get<int>() >= a.dim)
        throw InputError(at + ": basis index out of range");
    const Rational c = rational_field(e[3], at);
    if (c.is_zero()) continue;
    a.table[e[0].get<int>()][e[1].get<int>()].emplace_back(e[2].get<int>(), c);
  }
  for (auto& row : a.table)
    for (auto& sv : row)
      std::sort(sv.begin(), sv.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
  const auto problems = validate(a);
  if (!problems.empty()) throw InputError(where + ": invalid algebra: " + problems.front());
  return a;
}

Json cf_to_json(const CFData& cf) {
  Json j;
  j["kind"] = "cf_algebra";
  j["bulk"] = algebra_to_json(cf.bulk);
  j["boundary"] = algebra_to_json(cf.boundary);
  j["theta_A"] = vector_to_json(cf.theta_bulk);
  j["theta_B"] = vector_to_json(cf.theta_boundary);
  j["tau_star"] = matrix_to_json(cf.bulk_to_boundary);
  if (cf.boundary_to_bulk) j["tau_upper"] = matrix_to_json(*cf.boundary_to_bulk);
  return j;
}

CFData cf_from_json(const Json& j) {
  CFData cf;
  cf.bulk = algebra_from_json(field(j, "bulk", "cf_algebra"), "bulk");
  cf.boundary = algebra_from_json(field(j, "boundary", "cf_algebra"), "boundary");
  cf.theta_bulk = vector_field(field(j, "theta_A", "cf_algebra"), cf.bulk.dim, "theta_A");
  cf.theta_boundary = vector_field(field(j, "theta_B", "cf_algebra"), cf.boundary.dim, "theta_B");
  cf.bulk_to_boundary =
      matrix_field(field(j, "tau_star", "cf_algebra"), cf.boundary.dim, cf.bulk.dim, "tau_star");
  if (j.contains("tau_upper"))
    cf.boundary_to_bulk = matrix_field(j["tau_upper"], cf.bulk.dim, cf.boundary.dim, "tau_upper");
  return cf;
}

Json elementary_to_json(const ElementaryParams& p) {
  Json j;
  j["kind"] = "elementary";
  j["type"] = elem_kind_name(p.kind);
  j["n"] = p.n;
  j["m"] = p.m;
  j["lambda"] = p.lambda.str();
  j["mu"] = p.mu.str();
  return j;
}

ElementaryParams elementary_from_json(const Json& j) {
  ElementaryParams p;
  const Json& type = field(j, "type", "elementary");
  if (!type.is_string()) throw InputError("elementary.type must be \"Triv\", \"Mat\" or \"Q\"");
  const std::string t = type.get<std::string>();
  if (t == "Triv")
    p.kind = ElemKind::Triv;
  else if (t == "Mat")
    p.kind = ElemKind::Mat;
  else if (t == "Q")
    p.kind = ElemKind::Q;
  else
    throw InputError("elementary.type must be \"Triv\", \"Mat\" or \"Q\"");
  p.n = j.contains("n") ? int_field(j, "n", "elementary") : 0;
  p.m = j.contains("m") ? int_field(j, "m", "elementary") : 0;
  p.lambda = rational_field(field(j, "lambda", "elementary"), "elementary.lambda");
  if (p.kind != ElemKind::Triv)
    p.mu = rational_field(field(j, "mu", "elementary"), "elementary.mu");
  if (p.lambda.is_zero()) throw InputError("elementary.lambda must be nonzero");
  if (p.kind != ElemKind::Triv && p.mu.is_zero()) throw InputError("elementary.mu must be nonzero");
  return p;
}

Json mf_to_json(const MatrixFactorization& r) {
  Json j;
  j["kind"] = "matrix_factorization";
  j["variables"] = r.vars;
  j["W"] = poly_to_json(r.w);
  Json d0 = Json::array(), d1 = Json::array();
  for (int i = 0; i < r.rank(); ++i) {
    Json row0 = Json::array(), row1 = Json::array();
    for (int k = 0; k < r.rank(); ++k) {
      row0.push_back(poly_to_json(r.d0.at(i, k)));
      row1.push_back(poly_to_json(r.d1.at(i, k)));
    }
    d0.push_back(row0);
    d1.push_back(row1);
  }
  j["d0"] = d0;
  j["d1"] = d1;
  return j;
}

MatrixFactorization mf_from_json(const Json& j) {
  MatrixFactorization r;
  const Json& vars = field(j, "variables", "matrix_factorization");
  if (!vars.is_array() || vars.empty())
    throw InputError("matrix_factorization.variables must be a non-empty list of names");
  for (const auto& v : vars) {
    if (!v.is_string()) throw InputError("matrix_factorization.variables must be strings");
    r.vars.push_back(v.get<std::string>());
  }
  const int nv = int(r.vars.size());
  r.w = poly_field(field(j, "W", "matrix_factorization"), nv, "W");

  const Json& d0 = field(j, "d0", "matrix_factorization");
  const Json& d1 = field(j, "d1", "matrix_factorization");
  if (!d0.is_array() || !d1.is_array() || d0.size() != d1.size())
    throw InputError("d0 and d1 must be square matrices of equal size");
  const int rank = int(d0.size());
  r.d0 = PolyMat(rank, rank, nv);
  r.d1 = PolyMat(rank, rank, nv);
  for (int i = 0; i < rank; ++i) {
    if (!d0[i].is_array() || int(d0[i].size()) != rank || !d1[i].is_array() ||
        int(d1[i].size()) != rank)
      throw InputError("d0 and d1 must be square matrices of equal size");
    for (int k = 0; k < rank; ++k) {
      r.d0.at(i, k) =
          poly_field(d0[i][k], nv, "d0[" + std::to_string(i) + "][" + std::to_string(k) + "]");
      r.d1.at(i, k) =
          poly_field(d1[i][k], nv, "d1[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  const MFValidation v = validate_mf(r);
  if (!v.ok) throw InputError("matrix_factorization: " + v.detail);
  return r;
}

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("document must be an object with a string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  Document doc;
  if (kind == "cf_algebra") {
    doc.kind = Document::Kind::CfAlgebra;
    doc.cf = cf_from_json(j);
  } else if (kind == "elementary") {
    doc.kind = Document::Kind::Elementary;
    doc.params = elementary_from_json(j);
  } else if (kind == "matrix_factorization") {
    doc.kind = Document::Kind::MatrixFactorizationDoc;
    doc.mf = mf_from_json(j);
  } else {
    throw InputError("unknown document kind '" + kind + "'");
  }
  return doc;
}

namespace {

Json witness_to_json(const Witness& w) {
  Json j;
  Json idx = Json::array();
  for (long i : w.indices) idx.push_back(i);
  j["indices"] = idx;
  j["lhs"] = w.lhs.str();
  j["rhs"] = w.rhs.str();
  j["note"] = w.note;
  return j;
}

}  // namespace

Json report_to_json(const CheckReport& r) {
  Json j;
  j["kind"] = "verify_report";
  j["verdict"] = r.all_passed() ? "pass" : "fail";
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    if (c.witness) cj["witness"] = witness_to_json(*c.witness);
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

Json classification_to_json(const ClassificationReport& r) {
  Json j;
  j["kind"] = "classification_report";
  j["verdict"] = verdict_name(r.verdict);
  if (!r.detail.empty()) j["detail"] = r.detail;
  Json summands = Json::array();
  for (const auto& s : r.summands) {
    Json sj;
    sj["type"] = elem_kind_name(s.kind);
    sj["n"] = s.n;
    sj["m"] = s.m;
    sj["lambda"] = s.lambda.str();
    if (s.kind != ElemKind::Triv) sj["mu_squared"] = s.mu_squared.str();
    sj["bulk_idempotent"] = vector_to_json(s.bulk_idempotent);
    if (s.block_unit) sj["block_unit"] = vector_to_json(*s.block_unit);
    summands.push_back(sj);
  }
  j["summands"] = summands;
  j["checks"] = report_to_json(r.checks)["checks"];
  return j;
}

Json dao_to_json(const DaoResult& d) {
  Json j;
  j["kind"] = "dao_report";
  j["variables"] = d.nvars;
  j["even_dim"] = d.dims.even;
  j["odd_dim"] = d.dims.odd;
  j["chi"] = d.chi;
  j["verdict"] = d.vanishes() ? "pass" : "fail";
  return j;
}

std::string report_to_text(const CheckReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += c.name + ": " + (c.passed ? "pass" : "FAIL");
    if (c.witness) {
      out += "  (indices [";
      for (std::size_t i = 0; i < c.witness->indices.size(); ++i)
        out += (i ? " " : "") + std::to_string(c.witness->indices[i]);
      out += "], left " + c.witness->lhs.str() + ", right " + c.witness->rhs.str() + ": " +
             c.witness->note + ")";
    }
    out += "\n";
  }
  out += std::string("verdict: ") + (r.all_passed() ? "pass" : "fail") + "\n";
  return out;
}

std::string classification_to_text(const ClassificationReport& r) {
  std::string out = "verdict: " + verdict_name(r.verdict) + "\n";
  if (!r.detail.empty()) out += "detail: " + r.detail + "\n";
  for (const auto& s : r.summands) {
    out += "summand " + elem_kind_name(s.kind);
    if (s.kind == ElemKind::Mat) out += "(" + std::to_string(s.n) + "|" + std::to_string(s.m) + ")";
    if (s.kind == ElemKind::Q) out += "(" + std::to_string(s.n) + ")";
    out += "  lambda = " + s.lambda.str();
    if (s.kind != ElemKind::Triv) out += "  mu^2 = " + s.mu_squared.str();
    out += "\n";
  }
  return out;
}

std::string dao_to_text(const DaoResult& d) {
  return "chi = " + std::to_string(d.chi) + " (even " + std::to_string(d.dims.even) + ", odd " +
         std::to_string(d.dims.odd) + ")\nverdict: " + (d.vanishes() ? "pass" : "fail") + "\n";
}

std::string dump_machine(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace supercf
