// Bivariate polynomial gcd over Q via primitive pseudo-remainder sequences in
// Z[t][v]. Desk-scale degrees stay small, so this simple scheme is adequate.

#include <algorithm>
#include <utility>
#include <vector>

#include "uvt/error.hpp"
#include "uvt/laurent.hpp"

namespace uvt {
namespace {

// Dense univariate polynomial over Z, coefficients low to high, trimmed.
using UPoly = std::vector<mpz_class>;
// Dense polynomial in v with coefficients in Z[t].
using BPoly = std::vector<UPoly>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(BPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const BPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

mpz_class content(const UPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

UPoly divexact(UPoly p, const mpz_class& c) {
  for (auto& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return p;
}

UPoly primitive(const UPoly& p) {
  if (p.empty()) return p;
  mpz_class c = content(p);
  if (p.back() < 0) c = -c;
  return divexact(p, c);
}

// Sparse pseudo-remainder; any nonzero constant multiple of the true one.
UPoly prem(UPoly a, const UPoly& b) {
  const int db = degree(b);
  const mpz_class& lb = b.back();
  while (!a.empty() && degree(a) >= db) {
    const mpz_class la = a.back();
    const int shift = degree(a) - db;
    for (auto& x : a) x *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

UPoly gcd(UPoly a, UPoly b) {
  if (a.empty()) return primitive(b);
  if (b.empty()) return primitive(a);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());
  a = primitive(a);
  b = primitive(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    if (degree(b) == 0) {
      a = {1};
      break;
    }
    UPoly r = prem(a, b);
    a = std::move(b);
    b = primitive(r);
  }
  for (auto& x : a) x *= c;
  return a;
}

// Exact division in Z[t]; caller guarantees divisibility.
UPoly divexact(UPoly a, const UPoly& b) {
  if (degree(b) == 0) return divexact(std::move(a), b[0]);
  const int db = degree(b);
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    for (int i = 0; i <= db; ++i) a[i + shift] -= c * b[i];
    q[shift] = c;
    trim(a);
  }
  if (!a.empty()) throw InvariantError("inexact division in Z[t]");
  trim(q);
  return q;
}

UPoly content(const BPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (degree(g) == 0) break;
  }
  if (!g.empty() && degree(g) == 0) g = {1};
  return g;
}

BPoly divexact(BPoly p, const UPoly& c) {
  if (degree(c) == 0 && c[0] == 1) return p;
  for (auto& x : p) x = divexact(std::move(x), c);
  return p;
}

BPoly primitive(const BPoly& p) {
  if (p.empty()) return p;
  UPoly c = content(p);
  if (p.back().back() < 0) {
    for (auto& x : c) x = -x;
  }
  return divexact(p, c);
}

BPoly prem(BPoly a, const BPoly& b) {
  const int db = degree(b);
  const UPoly& lb = b.back();
  while (!a.empty() && degree(a) >= db) {
    const UPoly la = a.back();
    const int shift = degree(a) - db;
    for (auto& x : a) x = mul(x, lb);
    for (int i = 0; i <= db; ++i) a[i + shift] = sub(a[i + shift], mul(la, b[i]));
    trim(a);
  }
  return a;
}

BPoly to_bpoly(const LaurentPoly& p) {
  mpz_class lcm = 1;
  for (const auto& term : p.terms()) {
    if (term.exp.v < 0 || term.exp.t < 0) throw InvariantError("polynomial_gcd on a Laurent polynomial");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), term.coeff.get_den_mpz_t());
  }
  const Exponent hi = p.max_exponent();
  BPoly out(static_cast<std::size_t>(hi.v) + 1);
  for (const auto& term : p.terms()) {
    UPoly& row = out[term.exp.v];
    if (row.size() <= static_cast<std::size_t>(term.exp.t)) row.resize(term.exp.t + 1);
    mpq_class scaled = term.coeff * lcm;
    row[term.exp.t] = scaled.get_num();
  }
  for (auto& row : out) trim(row);
  trim(out);
  return out;
}

LaurentPoly from_bpoly(const BPoly& p) {
  std::vector<LaurentTerm> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (p[i][j] != 0) terms.push_back({Exponent{static_cast<int>(i), static_cast<int>(j)}, mpq_class(p[i][j])});
    }
  }
  return LaurentPoly::from_terms(std::move(terms));
}

mpz_class evaluate(const UPoly& p, long x) {
  mpz_class r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

// For a, b primitive in v: deg_v gcd(a, b) <= deg gcd(a(v,t0), b(v,t0)) whenever
// lc_v(a)(t0) != 0, so a constant gcd at t0 proves the bivariate gcd is 1.
bool coprime_by_evaluation(const BPoly& a, const BPoly& b) {
  for (long t0 : {2L, 3L, 5L, 7L, 11L, 13L}) {
    if (evaluate(a.back(), t0) == 0) continue;
    UPoly ua, ub;
    for (const auto& c : a) ua.push_back(evaluate(c, t0));
    for (const auto& c : b) ub.push_back(evaluate(c, t0));
    trim(ua);
    trim(ub);
    return degree(gcd(ua, ub)) == 0;
  }
  return false;
}

LaurentPoly normalise(const LaurentPoly& p) { return p.scaled(1 / p.lex_least().coeff); }

}  // namespace

LaurentPoly polynomial_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) throw InvariantError("polynomial_gcd of zero");
  if (a.constant_value() || b.constant_value()) return LaurentPoly(1);
  if (a == b) return normalise(a);
  BPoly pa = to_bpoly(a);
  BPoly pb = to_bpoly(b);
  UPoly c = gcd(content(pa), content(pb));
  pa = primitive(pa);
  pb = primitive(pb);
  if (degree(pa) < degree(pb)) std::swap(pa, pb);
  BPoly g;
  while (!coprime_by_evaluation(pa, pb)) {
    if (degree(pb) == 0) {
      g = {UPoly{1}};
      break;
    }
    BPoly r = prem(pa, pb);
    if (r.empty()) {
      g = std::move(pb);
      break;
    }
    pa = std::move(pb);
    pb = primitive(r);
  }
  if (g.empty()) g = {UPoly{1}};
  for (auto& row : g) row = mul(row, c);
  trim(g);
  return normalise(from_bpoly(g));
}

}  // namespace uvt
