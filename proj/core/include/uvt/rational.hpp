#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "uvt/laurent.hpp"

namespace uvt {

// Element of Q(v,t), kept as num/den with den a genuine polynomial (no
// negative exponents, no monomial factor) coprime to num and with its
// lexicographically least coefficient equal to 1. Equality is structural.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT: implicit constant
  explicit RationalFunction(const mpq_class& c) : num_(c), den_(1) {}
  RationalFunction(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RationalFunction(const LaurentPoly& num, const LaurentPoly& den);

  static RationalFunction v() { return LaurentPoly::v(); }
  static RationalFunction t() { return LaurentPoly::t(); }
  static RationalFunction monomial(int v_exp, int t_exp, const mpq_class& c = 1) {
    return LaurentPoly::monomial(v_exp, t_exp, c);
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }
  std::optional<mpq_class> constant_value() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;

  RationalFunction inverse() const;
  RationalFunction pow(int n) const;

  // t := 1. Throws ConstraintError if the denominator vanishes there.
  RationalFunction specialize_t_one() const;
  // nullopt when the denominator vanishes at the point.
  std::optional<mpq_class> evaluate(const mpq_class& v, const mpq_class& t) const;

  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const RationalFunction& a, const RationalFunction& b) {
    if (auto c = a.num_ <=> b.num_; c != 0) return c;
    return a.den_ <=> b.den_;
  }

  // Scalar grammar rendering; parse(to_string()) reproduces the value.
  std::string to_string() const;
  std::string to_latex() const;
  // True when to_string() needs parentheses to act as a factor.
  bool needs_parens() const;
  static RationalFunction parse(std::string_view text);

 private:
  struct Raw {};
  RationalFunction(Raw, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalise();

  LaurentPoly num_;
  LaurentPoly den_;
};

using Scalar = RationalFunction;

}  // namespace uvt
