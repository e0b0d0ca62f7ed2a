#include "supercf/univariate.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "supercf/linalg.hpp"

namespace supercf {

QPoly qpoly_trim(QPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int qpoly_deg(const QPoly& p) { return int(p.size()) - 1; }

Rational qpoly_eval(const QPoly& p, const Rational& x) {
  Rational v;
  for (int i = int(p.size()) - 1; i >= 0; --i) v = v * x + p[i];
  return v;
}

QPoly qpoly_derivative(const QPoly& p) {
  QPoly d;
  for (int i = 1; i < int(p.size()); ++i) d.push_back(p[i] * Rational(i));
  return qpoly_trim(std::move(d));
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return qpoly_trim(std::move(r));
}

std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("qpoly_divmod: division by zero polynomial");
  QPoly rem = a, quot;
  const int db = qpoly_deg(b);
  if (qpoly_deg(a) >= db) quot.assign(a.size() - b.size() + 1, Rational(0));
  while (qpoly_deg(rem) >= db) {
    const int k = qpoly_deg(rem) - db;
    const Rational c = rem.back() / b.back();
    quot[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    rem = qpoly_trim(std::move(rem));
  }
  return {qpoly_trim(std::move(quot)), rem};
}

QPoly qpoly_monic(QPoly p) {
  p = qpoly_trim(std::move(p));
  if (p.empty()) return p;
  const Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
  a = qpoly_trim(std::move(a));
  b = qpoly_trim(std::move(b));
  while (!b.empty()) {
    QPoly r = qpoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return qpoly_monic(std::move(a));
}

std::string qpoly_to_string(const QPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::string s;
  for (int i = qpoly_deg(p); i >= 0; --i) {
    if (p[i].is_zero()) continue;
    Rational c = p[i];
    if (!s.empty()) {
      s += c.sign() < 0 ? " - " : " + ";
      if (c.sign() < 0) c = -c;
    }
    const bool unit_coeff = c == Rational(1) && i > 0;
    if (!unit_coeff) s += c.str();
    if (i > 0) {
      if (!unit_coeff) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

QPoly minimal_polynomial(const SuperAlgebra& alg, const VecQ& t) {
  if (alg.dim == 0) throw std::invalid_argument("minimal_polynomial: zero algebra");
  std::vector<VecQ> powers = {alg.unit};
  for (int m = 1; m <= alg.dim; ++m) {
    powers.push_back(multiply(alg, powers.back(), t));
    MatQ prev = MatQ::from_columns({powers.begin(), powers.end() - 1}, alg.dim);
    if (auto dep = solve_linear(prev, powers.back())) {
      QPoly p(m + 1);
      p[m] = Rational(1);
      for (int i = 0; i < m; ++i) p[i] = -(*dep)[i];
      return p;
    }
  }
  throw std::logic_error("minimal_polynomial: no dependence found");
}

Rational simplest_in(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_in: empty interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
  if (hi.sign() <= 0) return -simplest_in(-hi, -lo);
  // 0 <= lo < hi
  const Rational a(lo.floor());
  const Rational next = a + Rational(1);
  if (next < hi) return next;  // smallest integer above lo fits
  if (lo == a) {
    // lo is itself an integer; interval is (a, hi) with hi <= a+1
    const Rational width = hi - a;
    const Rational y0 = Rational((Rational(1) / width).floor()) + Rational(1);
    return a + Rational(1) / y0;
  }
  const Rational y = simplest_in(Rational(1) / (hi - a), Rational(1) / (lo - a));
  return a + Rational(1) / y;
}

namespace {

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain = {p, qpoly_derivative(p)};
  while (qpoly_deg(chain.back()) > 0) {
    QPoly r = qpoly_divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;  // happens only for non-square-free input
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
  int v = 0, prev = 0;
  for (const auto& q : chain) {
    const int s = qpoly_eval(q, x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

RationalRoots rational_roots_squarefree(const QPoly& p_in) {
  QPoly p = qpoly_trim(p_in);
  if (qpoly_deg(p) < 1) return {{}, qpoly_monic(p)};

  RationalRoots out;
  while (true) {
    if (qpoly_deg(p) == 1) {
      out.roots.push_back(-p[0] / p[1]);
      p = {Rational(1)};
      break;
    }

    // Rational root theorem: after clearing to a primitive integer
    // polynomial, the denominator of any rational root divides the leading
    // coefficient.
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    mpz_class content = 0;
    for (const auto& c : p) {
      mpz_class n = c.num() * (l / c.den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
    }
    const mpz_class lead_int = p.back().num() * (l / p.back().den());
    const mpz_class den_bound = abs(lead_int / content);

    // Cauchy bound on root magnitude
    Rational bound(1);
    for (int i = 0; i + 1 < int(p.size()); ++i) {
      const Rational q = (p[i] / p.back()).abs();
      if (q > bound) bound = q;
    }
    bound += Rational(1);

    const std::vector<QPoly> chain = sturm_chain(p);
    struct Interval {
      Rational lo, hi;
      int vlo, vhi;
    };
    std::deque<Interval> work;
    {
      Rational lo = -bound, hi = bound;
      work.push_back({lo, hi, sign_variations(chain, lo), sign_variations(chain, hi)});
    }

    bool found = false;
    Rational root;
    while (!work.empty() && !found) {
      Interval iv = work.front();
      work.pop_front();
      if (iv.vlo - iv.vhi <= 0) continue;  // no real root in (lo, hi]
      const Rational cand = simplest_in(iv.lo, iv.hi);
      if (qpoly_eval(p, cand).is_zero()) {
        root = cand;
        found = true;
        break;
      }
      // every rational in the interval is at least as tall as the simplest one
      if (cand.den() > den_bound) continue;
      Rational mid = (iv.lo + iv.hi) / Rational(2);
      if (qpoly_eval(p, mid).is_zero()) {
        root = mid;
        found = true;
        break;
      }
      const int vmid = sign_variations(chain, mid);
      work.push_back({iv.lo, mid, iv.vlo, vmid});
      work.push_back({mid, iv.hi, vmid, iv.vhi});
    }

    if (!found) break;
    out.roots.push_back(root);
    p = qpoly_divmod(p, QPoly{-root, Rational(1)}).first;  // exact deflation
  }

  std::sort(out.roots.begin(), out.roots.end());
  out.cofactor = qpoly_monic(std::move(p));
  return out;
}

}  // namespace supercf
