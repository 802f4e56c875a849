#include "uvt/expr.hpp"

#include <regex>
#include <sstream>

#include "parser.hpp"
#include "uvt/error.hpp"

namespace uvt {
namespace {

struct AlgValue {
  const Algebra* alg;
  UElement x;

  friend AlgValue operator+(const AlgValue& a, const AlgValue& b) { return {a.alg, a.x + b.x}; }
  friend AlgValue operator-(const AlgValue& a, const AlgValue& b) { return {a.alg, a.x - b.x}; }
  friend AlgValue operator*(const AlgValue& a, const AlgValue& b) { return {a.alg, a.alg->multiply(a.x, b.x)}; }
  AlgValue operator-() const { return {alg, -x}; }
};

struct AlgebraAtoms {
  const Algebra& alg;
  StarSign sign;

  AlgValue wrap(UElement x) const { return {&alg, std::move(x)}; }

  AlgValue integer(const mpz_class& z) { return wrap(alg.scalar(Scalar(mpq_class(z)))); }

  AlgValue identifier(const std::string& name, std::size_t pos) {
    if (name == "v") return wrap(alg.scalar(Scalar::v()));
    if (name == "t") return wrap(alg.scalar(Scalar::t()));
    static const std::regex gen(R"(([EFK])([0-9]+)('?))");
    std::smatch m;
    if (!std::regex_match(name, m, gen) || (m[3].length() > 0 && m[1] != "K")) {
      throw ParseError("unknown symbol '" + name + "'", pos);
    }
    const std::string digits = m[2];
    const long idx = digits.size() > 4 ? 0 : std::stol(digits);
    if (idx < 1 || static_cast<std::size_t>(idx) > alg.rank()) {
      throw ParseError("generator index out of range in '" + name + "'", pos);
    }
    const int i = static_cast<int>(idx - 1);
    if (m[1] == "E") return wrap(alg.E(i));
    if (m[1] == "F") return wrap(alg.F(i));
    return wrap(m[3].length() > 0 ? alg.Kp(i) : alg.K(i));
  }

  AlgValue call(const std::string& name, const std::vector<AlgValue>& args, std::size_t pos) {
    if (name != "star") throw ParseError("unknown function '" + name + "'", pos);
    if (args.size() < 2) throw ParseError("star needs at least two arguments", pos);
    UElement acc = args.front().x;
    for (std::size_t k = 1; k < args.size(); ++k) acc = alg.star_multiply(acc, args[k].x, sign);
    return wrap(std::move(acc));
  }

  AlgValue divide(const AlgValue& a, const AlgValue& b, std::size_t pos) {
    auto s = b.x.scalar_value();
    if (!s) throw ParseError("division by a non-scalar", pos);
    if (s->is_zero()) throw ParseError("division by zero", pos);
    return wrap(s->inverse() * a.x);
  }

  AlgValue power(const AlgValue& a, int e, std::size_t pos) {
    try {
      return wrap(alg.power(a.x, e));
    } catch (const ConstraintError& err) {
      throw ParseError(err.what(), pos);
    }
  }
};

void render_letters(std::ostream& os, const Word& w, char letter, bool latex, bool& first) {
  for (std::size_t k = 0; k < w.size();) {
    std::size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    if (!first) os << (latex ? " " : "*");
    first = false;
    if (latex) {
      os << letter << "_{" << w[k] + 1 << "}";
      if (run > 1) os << "^{" << run << "}";
    } else {
      os << letter << w[k] + 1;
      if (run > 1) os << "^" << run;
    }
    k += run;
  }
}

void render_cartan(std::ostream& os, const RootVec& k, bool prime, bool latex, bool& first) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    if (!first) os << (latex ? " " : "*");
    first = false;
    if (latex) {
      os << (prime ? "K'_{" : "K_{") << i + 1 << "}";
      if (k[i] != 1) os << "^{" << k[i] << "}";
    } else {
      os << "K" << i + 1 << (prime ? "'" : "");
      if (k[i] != 1) os << "^" << k[i];
    }
  }
}

std::string monomial_text(const Monomial& m, bool latex) {
  std::ostringstream os;
  bool first = true;
  render_letters(os, m.f, 'F', latex, first);
  render_cartan(os, m.k, false, latex, first);
  render_cartan(os, m.kp, true, latex, first);
  render_letters(os, m.e, 'E', latex, first);
  return first ? "1" : os.str();
}

bool is_unit(const Monomial& m) { return m.f.empty() && m.e.empty() && is_zero(m.k) && is_zero(m.kp); }

struct Piece {
  bool negative = false;
  std::string text;
};

// For c = N/D with N a monomial, the Laurent polynomial L = D/N, so c = 1/L.
std::optional<LaurentPoly> reciprocal_laurent(const Scalar& c) {
  if (c.is_laurent() || !c.num().is_monomial()) return std::nullopt;
  return (Scalar(c.den()) / Scalar(c.num())).num();
}

std::string inner_sum(const std::vector<std::pair<bool, std::string>>& parts) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k == 0) {
      s += parts[k].first ? "-" : "";
    } else {
      s += parts[k].first ? " - " : " + ";
    }
    s += parts[k].second;
  }
  return s;
}

// Renders c * (group) where group is a signed list of monomial texts.
Piece render_scaled(const Scalar& c, std::vector<std::pair<bool, std::string>> group, bool unit_only,
                    bool latex) {
  const auto paren = [latex](const std::string& s) { return latex ? "\\left(" + s + "\\right)" : "(" + s + ")"; };
  const bool single = group.size() == 1;
  Piece p;
  if (c.is_laurent()) {
    const LaurentPoly& n = c.num();
    const std::string ns = latex ? c.to_latex() : n.to_string();
    const std::string body = single ? group[0].second : paren(inner_sum(group));
    if (single) {
      p.negative = group[0].first;
    }
    if (n.is_monomial() && n.terms().front().coeff < 0) {
      p.negative = !p.negative;
      const std::string pos = latex ? Scalar(-n).to_latex() : (-n).to_string();
      if (pos == "1") {
        p.text = body;
      } else {
        p.text = unit_only ? pos : pos + (latex ? " " : "*") + body;
      }
    } else if (ns == "1") {
      p.text = body;
    } else if (n.is_monomial()) {
      p.text = unit_only ? ns : ns + (latex ? " " : "*") + body;
    } else {
      p.text = unit_only ? paren(ns) : paren(ns) + (latex ? " " : "*") + body;
    }
    return p;
  }
  if (auto L = reciprocal_laurent(c)) {
    LaurentPoly l = *L;
    std::string ls = l.to_string();
    if (!ls.empty() && ls[0] == '-') {
      l = -l;
      p.negative = true;
    }
    if (single && !unit_only) {
      p.negative = p.negative != group[0].first;
      group[0].first = false;
    }
    std::string body = unit_only ? "1" : (single ? group[0].second : paren(inner_sum(group)));
    if (latex && !single) body = inner_sum(group);
    if (latex) {
      p.text = "\\frac{" + body + "}{" + Scalar(l).to_latex() + "}";
    } else {
      p.text = body + "/(" + l.to_string() + ")";
    }
    return p;
  }
  if (single) {
    p.negative = group[0].first;
    group[0].first = false;
  }
  const std::string body = unit_only ? "" : (single ? group[0].second : paren(inner_sum(group)));
  if (latex) {
    p.text = "\\frac{" + Scalar(c.num()).to_latex() + "}{" + Scalar(c.den()).to_latex() + "}" +
             (body.empty() ? "" : " " + body);
  } else {
    p.text = "(" + c.num().to_string() + ")" + (body.empty() ? "" : "*" + body) + "/(" + c.den().to_string() + ")";
  }
  return p;
}

std::string render_impl(const UElement& x, bool latex) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<Monomial, Scalar>> terms(x.terms().begin(), x.terms().end());
  std::vector<bool> used(terms.size(), false);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Scalar& c = terms[i].second;
    std::vector<std::pair<bool, std::string>> group{{false, monomial_text(terms[i].first, latex)}};
    bool unit_only = is_unit(terms[i].first);
    if (!c.is_laurent()) {
      const Scalar neg = -c;
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        if (used[j]) continue;
        const bool same = terms[j].second == c;
        if (!same && !(terms[j].second == neg)) continue;
        used[j] = true;
        group.emplace_back(!same, monomial_text(terms[j].first, latex));
        unit_only = false;
      }
    }
    pieces.push_back(render_scaled(c, std::move(group), unit_only, latex));
  }
  std::string out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (k == 0) {
      out += pieces[k].negative ? "-" : "";
    } else {
      out += pieces[k].negative ? " - " : " + ";
    }
    out += pieces[k].text;
  }
  return out;
}

}  // namespace

UElement parse_element(const Algebra& alg, std::string_view text, StarSign sign) {
  AlgebraAtoms atoms{alg, sign};
  return detail::ExprParser<AlgValue, AlgebraAtoms>(text, atoms).parse().x;
}

std::string render_monomial(const Monomial& m) { return monomial_text(m, false); }
std::string render_monomial_latex(const Monomial& m) { return monomial_text(m, true); }

std::string render(const UElement& x) { return render_impl(x, false); }
std::string render_latex(const UElement& x) { return render_impl(x, true); }

std::string render_word(const Word& w, const std::string& letter) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += "*";
    s += letter + std::to_string(w[k] + 1);
  }
  return s;
}

}  // namespace uvt
