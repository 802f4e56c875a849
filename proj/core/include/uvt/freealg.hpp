#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "uvt/cache.hpp"
#include "uvt/cartan.hpp"
#include "uvt/linalg.hpp"

namespace uvt {

// Word in the generators, 0-based indices.
using Word = std::vector<int>;

// Length first, then lexicographic.
struct LengthLex {
  bool operator()(const Word& a, const Word& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

RootVec word_degree(const Word& w, std::size_t rank);
Word reversed(Word w);

// Q(v,t)-combination of words.
class FreeElement {
 public:
  using Terms = std::map<Word, Scalar, LengthLex>;

  FreeElement() = default;
  explicit FreeElement(Word w, Scalar c = 1);
  static FreeElement one() { return FreeElement(Word{}); }

  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Word& w) const;
  void add(const Word& w, const Scalar& c);

  FreeElement& operator+=(const FreeElement& o);
  FreeElement& operator-=(const FreeElement& o);
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator*(const Scalar& c, const FreeElement& x);
  // Concatenation product.
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b);
  friend bool operator==(const FreeElement& a, const FreeElement& b) { return a.terms_ == b.terms_; }

  // Component of the given degree.
  FreeElement homogeneous_part(const RootVec& nu) const;
  FreeElement specialize_t_one() const;

  // "th1*th2 - t^-2*th2*th1"
  std::string to_string() const;

 private:
  Terms terms_;
};

// Element of 'f (x) 'f.
class TensorElement {
 public:
  using Key = std::pair<Word, Word>;
  std::map<Key, Scalar> terms;

  void add(const Word& a, const Word& b, const Scalar& c);
  static TensorElement pure(const FreeElement& a, const FreeElement& b);
  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms == b.terms; }
};

enum class Side { left, right };

struct GradedBasis {
  RootVec degree;
  std::vector<Word> words;            // all words of this degree, length-lex
  std::vector<std::size_t> selected;  // indices into `words`
  std::vector<Word> basis;            // words[selected[k]]
  ScalarMatrix gram;                  // pairing on basis x basis
  std::size_t rank = 0;
  std::size_t radical_dim = 0;
};

class FreeAlgebra {
 public:
  explicit FreeAlgebra(CartanDatum datum);
  FreeAlgebra(const FreeAlgebra&) = delete;
  FreeAlgebra& operator=(const FreeAlgebra&) = delete;

  const CartanDatum& datum() const { return datum_; }
  std::size_t rank() const { return datum_.rank(); }
  RootVec degree(const Word& w) const { return word_degree(w, rank()); }

  FreeElement theta(int i) const { return FreeElement(Word{i}); }
  FreeElement multiply(const FreeElement& a, const FreeElement& b) const { return a * b; }

  // (x1 (x) x2)(y1 (x) y2) with the v/t twist.
  TensorElement twisted_multiply(const TensorElement& a, const TensorElement& b) const;
  TensorElement coproduct(const FreeElement& x) const;

  Scalar pairing(const Word& a, const Word& b) const;
  Scalar pairing(const FreeElement& a, const FreeElement& b) const;
  // Pairing on 'f (x) 'f.
  Scalar tensor_pairing(const TensorElement& a, const TensorElement& b) const;
  // Laurent numerator of pairing(a, b): pairing = core / prod_letters (1 - v_i^-2).
  LaurentPoly pairing_core(const Word& a, const Word& b) const;

  FreeElement r_map(const FreeElement& x, int i, Side side) const;
  FreeElement r_map(const Word& w, int i, Side side) const;

  FreeElement divided_power(int i, int n) const;
  FreeElement serre_element(int i, int j) const;

  std::vector<Word> words_of_degree(const RootVec& nu) const;
  std::shared_ptr<const GradedBasis> graded_basis(const RootVec& nu) const;
  // Coefficients of w modulo the radical on graded_basis(|w|).basis.
  std::vector<Scalar> reduce(const Word& w) const;
  // Full Gram matrix on all words of degree nu.
  ScalarMatrix full_gram(const RootVec& nu) const;

 private:
  struct DegreeData {
    std::shared_ptr<const GradedBasis> basis;
    ScalarMatrix core_inverse;  // inverse of the core Gram on the basis
  };
  const DegreeData& degree_data(const RootVec& nu) const;

  CartanDatum datum_;
  mutable MemoCache<std::pair<Word, Word>, LaurentPoly> core_cache_;
  mutable MemoCache<RootVec, std::shared_ptr<const DegreeData>> degree_cache_;
  mutable MemoCache<Word, std::vector<Scalar>> reduce_cache_;
};

}  // namespace uvt
