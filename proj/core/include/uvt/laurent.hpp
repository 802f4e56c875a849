#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uvt {

// Exponent pair of a monomial v^v t^t.
struct Exponent {
  int v = 0;
  int t = 0;

  friend auto operator<=>(const Exponent&, const Exponent&) = default;
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

struct LaurentTerm {
  Exponent exp;
  mpq_class coeff;
};

// Finite Q-linear combination of monomials v^a t^b with a, b in Z.
// Terms are kept sorted by exponent (lexicographic in (v, t)) and never hold a
// zero coefficient, so structural equality is mathematical equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT: implicit constant
  explicit LaurentPoly(mpq_class c);

  static LaurentPoly monomial(int v_exp, int t_exp, mpq_class coeff = 1);
  static LaurentPoly v() { return monomial(1, 0); }
  static LaurentPoly t() { return monomial(0, 1); }
  // Takes ownership of arbitrary (unsorted, possibly duplicated) terms.
  static LaurentPoly from_terms(std::vector<LaurentTerm> terms);

  const std::vector<LaurentTerm>& terms() const& { return terms_; }
  std::vector<LaurentTerm> terms() && { return std::move(terms_); }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::optional<mpq_class> constant_value() const;

  // Componentwise minimum / maximum exponents; undefined on zero.
  Exponent min_exponent() const;
  Exponent max_exponent() const;
  const LaurentTerm& lex_least() const { return terms_.front(); }
  const LaurentTerm& lex_leading() const { return terms_.back(); }

  LaurentPoly shifted(Exponent by) const;
  LaurentPoly scaled(const mpq_class& c) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  LaurentPoly pow(unsigned n) const;

  // Exact division; std::nullopt when `d` does not divide *this.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const;

  // Substitutions / evaluation.
  LaurentPoly substitute_t_one() const;
  // Returns nullopt if a negative power of zero would be taken.
  std::optional<mpq_class> evaluate(const mpq_class& v, const mpq_class& t) const;

  std::size_t hash() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b);

  // Renders in the scalar grammar, e.g. "v^2 - 2*v^-1*t + 1/2".
  std::string to_string() const;

 private:
  std::vector<LaurentTerm> terms_;
};

// gcd of two polynomials (no negative exponents) over Q, normalised so the
// lexicographically least term has coefficient 1. Inputs must be nonzero.
LaurentPoly polynomial_gcd(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace uvt
