#include "supercf/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace supercf {

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

Rational Poly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (int(e.size()) != nvars_) throw std::invalid_argument("Poly: exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  Poly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::invalid_argument("Poly: variable index out of range");
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(e[var]));
  }
  return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    if (!s.empty()) {
      s += v.sign() < 0 ? " - " : " + ";
      if (v.sign() < 0) v = -v;
    } else if (v.sign() < 0) {
      s += "-";
      v = -v;
    }
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      s += v.str();
    else {
      if (!(v == Rational(1))) s += v.str() + "*";
      s += mono;
    }
  }
  return s;
}

PolyMat PolyMat::scaled_identity(int n, const Poly& w) {
  PolyMat m(n, n, w.nvars());
  for (int i = 0; i < n; ++i) m.at(i, i) = w;
  return m;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("PolyMat: dimension mismatch");
  const int nv = data.empty() ? (o.data.empty() ? 0 : o.data[0].nvars()) : data[0].nvars();
  PolyMat r(rows, o.cols, nv);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Poly& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) {
        const Poly& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  return r;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("PolyMat: shape mismatch");
  PolyMat r = *this;
  for (std::size_t i = 0; i < data.size(); ++i) r.data[i] = r.data[i] + o.data[i];
  return r;
}

PolyMat PolyMat::operator-(const PolyMat& o) const { return *this + (-o); }

PolyMat PolyMat::operator-() const {
  PolyMat r = *this;
  for (auto& p : r.data) p = -p;
  return r;
}

PolyMat PolyMat::scaled(const Rational& c) const {
  PolyMat r = *this;
  for (auto& p : r.data) p = p.scaled(c);
  return r;
}

PolyMat PolyMat::derivative(int var) const {
  PolyMat r = *this;
  for (auto& p : r.data) p = p.derivative(var);
  return r;
}

bool PolyMat::is_zero() const {
  for (const auto& p : data)
    if (!p.is_zero()) return false;
  return true;
}

int PolyMat::max_total_degree() const {
  int d = -1;
  for (const auto& p : data) d = std::max(d, p.total_degree());
  return d;
}

Poly embed_poly(const Poly& p, int new_nvars, const std::vector<int>& var_map) {
  if (int(var_map.size()) != p.nvars()) throw std::invalid_argument("embed_poly: map arity");
  Poly r(new_nvars);
  for (const auto& [e, c] : p.terms()) {
    Exponents ne(new_nvars, 0);
    for (int i = 0; i < p.nvars(); ++i) ne.at(var_map[i]) = e[i];
    r.add_term(ne, c);
  }
  return r;
}

}  // namespace supercf
