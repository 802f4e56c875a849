#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "uvt/freealg.hpp"

namespace uvt {

// F_f K_k K'_kp E_e with f, e basis words of U^- and U^+.
struct Monomial {
  Word f;
  RootVec k;
  RootVec kp;
  Word e;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Rendering order: F-words, then K, then K', then E-words; each descending,
// words compared length-lex.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class UElement {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialOrder>;

  UElement() = default;
  UElement(Monomial m, Scalar c);

  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const Monomial& m) const;
  void add(const Monomial& m, const Scalar& c);

  UElement& operator+=(const UElement& o);
  UElement& operator-=(const UElement& o);
  friend UElement operator+(UElement a, const UElement& b) { return a += b; }
  friend UElement operator-(UElement a, const UElement& b) { return a -= b; }
  UElement operator-() const;
  friend UElement operator*(const Scalar& c, const UElement& x);
  friend bool operator==(const UElement& a, const UElement& b) { return a.terms_ == b.terms_; }

  // Scalar value if the element is a multiple of 1.
  std::optional<Scalar> scalar_value() const;

 private:
  Terms terms_;
};

struct MonomialPairOrder {
  bool operator()(const std::pair<Monomial, Monomial>& a, const std::pair<Monomial, Monomial>& b) const;
};

// Element of U (x) U.
class TensorU {
 public:
  using Key = std::pair<Monomial, Monomial>;
  using Terms = std::map<Key, Scalar, MonomialPairOrder>;

  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  void add(const Monomial& a, const Monomial& b, const Scalar& c);
  static TensorU pure(const UElement& a, const UElement& b);
  friend bool operator==(const TensorU& a, const TensorU& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

// Element of U (x) U (x) U, for coassociativity checks.
using Monomial3 = std::vector<Monomial>;

enum class StarSign { printed, flipped };

// (Z^I x Z^I)-degree.
struct BiDegree {
  RootVec first;
  RootVec second;
  friend bool operator==(const BiDegree&, const BiDegree&) = default;
  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
};

class Algebra {
 public:
  explicit Algebra(CartanDatum datum);
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const CartanDatum& datum() const { return free_.datum(); }
  const FreeAlgebra& free() const { return free_; }
  std::size_t rank() const { return datum().rank(); }

  // Generators (0-based index).
  UElement one() const;
  UElement scalar(const Scalar& c) const;
  UElement E(int i) const;
  UElement F(int i) const;
  UElement K(int i, int power = 1) const;
  UElement Kp(int i, int power = 1) const;
  UElement cartan(const RootVec& k, const RootVec& kp) const;
  // Image of theta-words under theta -> E and theta -> F (word reversal on F).
  UElement from_theta_E(const FreeElement& x) const;
  UElement from_theta_F(const FreeElement& x) const;
  // Product of E (resp. F) generators along an arbitrary word, reduced.
  UElement E_word(const Word& w) const;
  UElement F_word(const Word& w) const;
  // Basis of U^+_nu / U^-_{-nu} as words.
  std::vector<Word> E_basis(const RootVec& nu) const;
  std::vector<Word> F_basis(const RootVec& nu) const;

  UElement multiply(const UElement& a, const UElement& b) const;
  UElement multiply(std::initializer_list<UElement> xs) const;
  UElement commutator(const UElement& a, const UElement& b) const;
  UElement power(const UElement& a, int n) const;
  // Inverse of c * K_k K'_kp; ConstraintError otherwise.
  UElement invert_monomial(const UElement& a) const;

  TensorU coproduct(const UElement& a) const;
  TensorU tensor_multiply(const TensorU& a, const TensorU& b) const;
  // m(x (x) y) = xy.
  UElement contract(const TensorU& t) const;
  UElement antipode(const UElement& a, bool inverse = false) const;
  Scalar counit(const UElement& a) const;
  UElement adjoint(const UElement& u, const UElement& m) const;
  // (Delta (x) id) Delta and (id (x) Delta) Delta, as maps of triples.
  std::map<Monomial3, Scalar> coproduct_left_twice(const UElement& a) const;
  std::map<Monomial3, Scalar> coproduct_right_twice(const UElement& a) const;

  // For x in U^+: {p_i(x), p'_i(x)}; for x in U^-: {a_i(x), a'_i(x)}.
  std::pair<UElement, UElement> commutation_maps(const UElement& x, int i) const;

  std::optional<BiDegree> degree(const UElement& a) const;
  BiDegree degree(const Monomial& m) const;
  // Components by bidegree.
  std::map<BiDegree, UElement> split_by_degree(const UElement& a) const;
  UElement star_multiply(const UElement& a, const UElement& b, StarSign sign) const;
  // Exponent e with x * y = t^e xy for homogeneous x, y.
  int star_twist(const BiDegree& x, const BiDegree& y, StarSign sign) const;

  // Weight of a monomial under conjugation: K_i m K_i^{-1} = c m.
  Scalar cartan_commute_factor(const RootVec& k, const RootVec& kp, const RootVec& deg) const;

  bool in_positive_part(const UElement& a) const;
  bool in_negative_part(const UElement& a) const;
  bool in_upper_borel(const UElement& a) const;
  bool in_lower_borel(const UElement& a) const;

 private:
  struct RawTerm {
    Word f;
    RootVec k;
    RootVec kp;
    Word e;
    Scalar c;
  };
  using RawMap = std::map<std::tuple<Word, RootVec, RootVec, Word>, Scalar>;

  const std::vector<RawTerm>& straighten(const Word& e, const Word& f) const;
  std::vector<RawTerm> straighten_letter(int a, const Word& f) const;
  void reduce_into(const RawMap& raw, UElement& out) const;
  // Coefficients of an arbitrary E / F word on the chosen basis.
  std::vector<std::pair<Word, Scalar>> reduce_E(const Word& w) const;
  std::vector<std::pair<Word, Scalar>> reduce_F(const Word& w) const;
  Scalar quantum_denominator(int i) const;  // v_i - v_i^{-1}

  FreeAlgebra free_;
  mutable MemoCache<std::pair<Word, Word>, std::shared_ptr<const std::vector<RawTerm>>> straighten_cache_;
};

}  // namespace uvt
