#include "uvt/rational.hpp"

#include <cctype>

#include "parser.hpp"
#include "uvt/error.hpp"

namespace uvt {
namespace {

Exponent negate(Exponent e) { return {-e.v, -e.t}; }

LaurentPoly exact(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw InvariantError("expected exact polynomial division");
  return *q;
}

// gcd of a Laurent polynomial with a true polynomial without monomial factor.
LaurentPoly gcd_with(const LaurentPoly& laurent, const LaurentPoly& poly) {
  return polynomial_gcd(laurent.shifted(negate(laurent.min_exponent())), poly);
}

}  // namespace

RationalFunction::RationalFunction(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  canonicalise();
}

void RationalFunction::canonicalise() {
  if (den_.is_zero()) throw ConstraintError("division by zero");
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  const Exponent lo = negate(den_.min_exponent());
  den_ = den_.shifted(lo);
  num_ = num_.shifted(lo);
  if (den_.is_monomial()) {
    num_ = num_.scaled(1 / den_.terms()[0].coeff);
    den_ = LaurentPoly(1);
    return;
  }
  LaurentPoly g = gcd_with(num_, den_);
  if (!g.is_one()) {
    num_ = exact(num_, g);
    den_ = exact(den_, g);
    if (den_.is_monomial()) {
      num_ = num_.scaled(1 / den_.terms()[0].coeff);
      den_ = LaurentPoly(1);
      return;
    }
  }
  const mpq_class c = den_.lex_least().coeff;
  if (c != 1) {
    num_ = num_.scaled(1 / c);
    den_ = den_.scaled(1 / c);
  }
}

std::optional<mpq_class> RationalFunction::constant_value() const {
  if (!den_.is_one()) return std::nullopt;
  return num_.constant_value();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalise();
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  LaurentPoly g = polynomial_gcd(den_, o.den_);
  if (g.is_one()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    if (num_.is_zero()) den_ = LaurentPoly(1);
    return *this;
  }
  LaurentPoly od = exact(o.den_, g);
  num_ = num_ * od + o.num_ * exact(den_, g);
  den_ *= od;
  canonicalise();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction RationalFunction::operator-() const { return RationalFunction(Raw{}, -num_, den_); }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  LaurentPoly a = num_;
  LaurentPoly bn = o.num_;
  LaurentPoly ad = den_;
  LaurentPoly bd = o.den_;
  if (!bd.is_one()) {
    LaurentPoly g = gcd_with(a, bd);
    if (!g.is_one()) {
      a = exact(a, g);
      bd = exact(bd, g);
    }
  }
  if (!ad.is_one()) {
    LaurentPoly g = gcd_with(bn, ad);
    if (!g.is_one()) {
      bn = exact(bn, g);
      ad = exact(ad, g);
    }
  }
  num_ = a * bn;
  den_ = ad * bd;
  if (den_.is_monomial()) {
    num_ = num_.scaled(1 / den_.terms()[0].coeff);
    den_ = LaurentPoly(1);
  }
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ConstraintError("division by zero");
  const Exponent lo = negate(num_.min_exponent());
  LaurentPoly d = num_.shifted(lo);
  LaurentPoly n = den_.shifted(lo);
  if (d.is_monomial()) return RationalFunction(Raw{}, n.scaled(1 / d.terms()[0].coeff), LaurentPoly(1));
  const mpq_class c = d.lex_least().coeff;
  if (c != 1) {
    n = n.scaled(1 / c);
    d = d.scaled(1 / c);
  }
  return RationalFunction(Raw{}, std::move(n), std::move(d));
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  return RationalFunction(Raw{}, num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

RationalFunction RationalFunction::specialize_t_one() const {
  LaurentPoly d = den_.substitute_t_one();
  if (d.is_zero()) throw ConstraintError("denominator vanishes at t = 1");
  return RationalFunction(num_.substitute_t_one(), d);
}

std::optional<mpq_class> RationalFunction::evaluate(const mpq_class& v, const mpq_class& t) const {
  auto d = den_.evaluate(v, t);
  if (!d || *d == 0) return std::nullopt;
  auto n = num_.evaluate(v, t);
  if (!n) return std::nullopt;
  return *n / *d;
}

bool RationalFunction::needs_parens() const { return den_.is_one() && num_.size() > 1; }

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  if (num_.is_monomial()) return "(" + exact(den_, num_).to_string() + ")^-1";
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

std::string laurent_latex(const LaurentPoly& p) {
  std::string s = p.to_string();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') {
      out += ' ';
    } else if (s[i] == '^') {
      std::size_t j = i + 1;
      if (j < s.size() && s[j] == '-') ++j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out += "^{" + s.substr(i + 1, j - i - 1) + "}";
      i = j - 1;
    } else if (s[i] == '/') {
      // Rational coefficient a/b inside a term.
      std::size_t a = out.size();
      while (a > 0 && std::isdigit(static_cast<unsigned char>(out[a - 1]))) --a;
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out = out.substr(0, a) + "\\frac{" + out.substr(a) + "}{" + s.substr(i + 1, j - i - 1) + "}";
      i = j - 1;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

std::string RationalFunction::to_latex() const {
  if (den_.is_one()) return laurent_latex(num_);
  return "\\frac{" + laurent_latex(num_) + "}{" + laurent_latex(den_) + "}";
}

namespace {

struct ScalarAtoms {
  RationalFunction integer(const mpz_class& z) { return RationalFunction(mpq_class(z)); }
  RationalFunction identifier(const std::string& name, std::size_t pos) {
    if (name == "v") return RationalFunction::v();
    if (name == "t") return RationalFunction::t();
    throw ParseError("unknown symbol '" + name + "'", pos);
  }
  RationalFunction call(const std::string& name, const std::vector<RationalFunction>&, std::size_t pos) {
    throw ParseError("unknown function '" + name + "'", pos);
  }
  RationalFunction divide(const RationalFunction& a, const RationalFunction& b, std::size_t pos) {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    return a / b;
  }
  RationalFunction power(const RationalFunction& a, int e, std::size_t pos) {
    if (e < 0 && a.is_zero()) throw ParseError("negative power of zero", pos);
    return a.pow(e);
  }
};

}  // namespace

RationalFunction RationalFunction::parse(std::string_view text) {
  ScalarAtoms atoms;
  return detail::ExprParser<RationalFunction, ScalarAtoms>(text, atoms).parse();
}

}  // namespace uvt
