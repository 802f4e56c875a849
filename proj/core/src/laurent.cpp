#include "uvt/laurent.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>

#include "uvt/error.hpp"

namespace uvt {
namespace {

int checked_add(int a, int b) {
  int r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw InvariantError("Laurent exponent overflow");
  }
  return r;
}

Exponent add_exp(Exponent a, Exponent b) {
  return {checked_add(a.v, b.v), checked_add(a.t, b.t)};
}

bool by_exponent(const LaurentTerm& a, const LaurentTerm& b) { return a.exp < b.exp; }

// Sorts, merges equal exponents and drops zeros.
std::vector<LaurentTerm> canonicalise(std::vector<LaurentTerm> terms) {
  std::sort(terms.begin(), terms.end(), by_exponent);
  std::vector<LaurentTerm> out;
  out.reserve(terms.size());
  for (auto& term : terms) {
    if (!out.empty() && out.back().exp == term.exp) {
      out.back().coeff += term.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(term));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return out;
}

}  // namespace

LaurentPoly::LaurentPoly(long c) : LaurentPoly(mpq_class(c)) {}

LaurentPoly::LaurentPoly(mpq_class c) {
  if (c != 0) terms_.push_back({Exponent{}, std::move(c)});
}

LaurentPoly LaurentPoly::monomial(int v_exp, int t_exp, mpq_class coeff) {
  LaurentPoly p;
  if (coeff != 0) p.terms_.push_back({Exponent{v_exp, t_exp}, std::move(coeff)});
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<LaurentTerm> terms) {
  LaurentPoly p;
  p.terms_ = canonicalise(std::move(terms));
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].exp == Exponent{} && terms_[0].coeff == 1;
}

std::optional<mpq_class> LaurentPoly::constant_value() const {
  if (terms_.empty()) return mpq_class(0);
  if (terms_.size() == 1 && terms_[0].exp == Exponent{}) return terms_[0].coeff;
  return std::nullopt;
}

Exponent LaurentPoly::min_exponent() const {
  Exponent m{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  for (const auto& term : terms_) {
    m.v = std::min(m.v, term.exp.v);
    m.t = std::min(m.t, term.exp.t);
  }
  return m;
}

Exponent LaurentPoly::max_exponent() const {
  Exponent m{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  for (const auto& term : terms_) {
    m.v = std::max(m.v, term.exp.v);
    m.t = std::max(m.t, term.exp.t);
  }
  return m;
}

LaurentPoly LaurentPoly::shifted(Exponent by) const {
  LaurentPoly p = *this;
  for (auto& term : p.terms_) term.exp = add_exp(term.exp, by);
  return p;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& term : p.terms_) term.coeff *= c;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<LaurentTerm> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->exp < b->exp)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp < a->exp) {
      merged.push_back(*b++);
    } else {
      mpq_class c = a->coeff + b->coeff;
      if (c != 0) merged.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& term : p.terms_) term.coeff = -term.coeff;
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1) return a.shifted(b.terms_[0].exp).scaled(b.terms_[0].coeff);
  if (a.terms_.size() == 1) return b.shifted(a.terms_[0].exp).scaled(a.terms_[0].coeff);
  std::vector<LaurentTerm> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      products.push_back({add_exp(x.exp, y.exp), x.coeff * y.coeff});
    }
  }
  LaurentPoly p;
  p.terms_ = canonicalise(std::move(products));
  return p;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& d) const {
  if (d.is_zero()) throw ConstraintError("division by the zero polynomial");
  if (is_zero()) return LaurentPoly{};
  if (d.is_monomial()) {
    const auto& m = d.terms_[0];
    return shifted({-m.exp.v, -m.exp.t}).scaled(1 / m.coeff);
  }
  const Exponent lo_a = min_exponent();
  const Exponent lo_d = d.min_exponent();
  const Exponent floor{lo_a.v - lo_d.v, lo_a.t - lo_d.t};
  const LaurentTerm& lead = d.lex_leading();
  LaurentPoly remainder = *this;
  std::vector<LaurentTerm> quotient;
  while (!remainder.is_zero()) {
    const LaurentTerm& top = remainder.lex_leading();
    Exponent q{top.exp.v - lead.exp.v, top.exp.t - lead.exp.t};
    if (q.v < floor.v || q.t < floor.t) return std::nullopt;
    mpq_class c = top.coeff / lead.coeff;
    remainder -= d.shifted(q).scaled(c);
    quotient.push_back({q, std::move(c)});
  }
  return from_terms(std::move(quotient));
}

LaurentPoly LaurentPoly::substitute_t_one() const {
  std::vector<LaurentTerm> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_) out.push_back({Exponent{term.exp.v, 0}, term.coeff});
  return from_terms(std::move(out));
}

namespace {

std::optional<mpq_class> int_pow(const mpq_class& base, int e) {
  if (e < 0 && base == 0) return std::nullopt;
  mpq_class r = 1;
  mpz_class num = base.get_num();
  mpz_class den = base.get_den();
  unsigned n = static_cast<unsigned>(e < 0 ? -static_cast<long>(e) : e);
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), n);
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), n);
  r = e < 0 ? mpq_class(pd, pn) : mpq_class(pn, pd);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<mpq_class> LaurentPoly::evaluate(const mpq_class& v, const mpq_class& t) const {
  mpq_class sum = 0;
  for (const auto& term : terms_) {
    auto pv = int_pow(v, term.exp.v);
    auto pt = int_pow(t, term.exp.t);
    if (!pv || !pt) return std::nullopt;
    sum += term.coeff * *pv * *pt;
  }
  return sum;
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = terms_.size();
  auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& term : terms_) {
    mix(std::hash<int>{}(term.exp.v));
    mix(std::hash<int>{}(term.exp.t));
    mix(mpz_get_si(term.coeff.get_num_mpz_t()));
    mix(mpz_get_si(term.coeff.get_den_mpz_t()));
  }
  return h;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exp <=> b.terms_[i].exp; c != 0) return c;
    int s = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
    if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

namespace {

void render_var(std::ostringstream& os, char name, int e, bool& first_factor) {
  if (e == 0) return;
  if (!first_factor) os << '*';
  os << name;
  if (e != 1) os << '^' << e;
  first_factor = false;
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  // Descending order, rotated to open on the first positive term.
  std::vector<const LaurentTerm*> order;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) order.push_back(&*it);
  auto pos = std::find_if(order.begin(), order.end(), [](const LaurentTerm* x) { return x->coeff > 0; });
  if (pos != order.end()) std::rotate(order.begin(), pos, order.end());
  bool first = true;
  for (const LaurentTerm* it : order) {
    mpq_class c = it->coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit_monomial = it->exp != Exponent{};
    bool first_factor = true;
    if (!(c == 1 && unit_monomial)) {
      os << c.get_str();
      first_factor = false;
    }
    render_var(os, 'v', it->exp.v, first_factor);
    render_var(os, 't', it->exp.t, first_factor);
  }
  return os.str();
}

}  // namespace uvt
