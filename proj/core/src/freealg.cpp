#include "uvt/freealg.hpp"

#include <algorithm>
#include <sstream>

#include "uvt/error.hpp"
#include "uvt/quantum.hpp"

namespace uvt {

RootVec word_degree(const Word& w, std::size_t rank) {
  RootVec d(rank, 0);
  for (int a : w) {
    if (a < 0 || static_cast<std::size_t>(a) >= rank) throw ConstraintError("generator index out of range");
    ++d[a];
  }
  return d;
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

FreeElement::FreeElement(Word w, Scalar c) {
  if (!c.is_zero()) terms_.emplace(std::move(w), std::move(c));
}

Scalar FreeElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void FreeElement::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

FreeElement operator*(const Scalar& c, const FreeElement& x) {
  FreeElement r;
  if (c.is_zero()) return r;
  for (const auto& [w, a] : x.terms_) r.terms_.emplace(w, c * a);
  return r;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) {
  FreeElement r;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  }
  return r;
}

FreeElement FreeElement::homogeneous_part(const RootVec& nu) const {
  FreeElement r;
  for (const auto& [w, c] : terms_) {
    if (word_degree(w, nu.size()) == nu) r.terms_.emplace(w, c);
  }
  return r;
}

FreeElement FreeElement::specialize_t_one() const {
  FreeElement r;
  for (const auto& [w, c] : terms_) r.add(w, c.specialize_t_one());
  return r;
}

namespace {

std::string render_word(const Word& w, const char* prefix) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) os << '*';
    os << prefix << (w[k] + 1);
  }
  return os.str();
}

}  // namespace

std::string FreeElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = false;
    Scalar shown = c;
    if (!coeff.empty() && coeff[0] == '-' && (c.is_laurent() ? !c.needs_parens() : false)) {
      negative = true;
      shown = -c;
    }
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    const std::string body = w.empty() ? "1" : render_word(w, "th");
    if (shown.is_one()) {
      os << body;
    } else if (shown.needs_parens()) {
      os << "(" << shown.to_string() << ")" << (w.empty() ? "" : "*" + body);
    } else {
      os << shown.to_string() << (w.empty() ? "" : "*" + body);
    }
  }
  return os.str();
}

void TensorElement::add(const Word& a, const Word& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

TensorElement TensorElement::pure(const FreeElement& a, const FreeElement& b) {
  TensorElement r;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) r.add(wa, wb, ca * cb);
  }
  return r;
}

FreeAlgebra::FreeAlgebra(CartanDatum datum) : datum_(std::move(datum)) {}

TensorElement FreeAlgebra::twisted_multiply(const TensorElement& a, const TensorElement& b) const {
  TensorElement r;
  for (const auto& [ka, ca] : a.terms) {
    const RootVec x2 = degree(ka.second);
    for (const auto& [kb, cb] : b.terms) {
      const RootVec y1 = degree(kb.first);
      const Scalar twist = datum_.vt(datum_.dot(y1, x2), datum_.skew(y1, x2));
      Word w1 = ka.first;
      w1.insert(w1.end(), kb.first.begin(), kb.first.end());
      Word w2 = ka.second;
      w2.insert(w2.end(), kb.second.begin(), kb.second.end());
      r.add(w1, w2, twist * ca * cb);
    }
  }
  return r;
}

TensorElement FreeAlgebra::coproduct(const FreeElement& x) const {
  TensorElement r;
  for (const auto& [w, c] : x.terms()) {
    TensorElement acc;
    acc.add({}, {}, c);
    for (int a : w) {
      TensorElement g;
      g.add({a}, {}, 1);
      g.add({}, {a}, 1);
      acc = twisted_multiply(acc, g);
    }
    for (const auto& [k, v] : acc.terms) r.add(k.first, k.second, v);
  }
  return r;
}

LaurentPoly FreeAlgebra::pairing_core(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return LaurentPoly();
  if (a.empty()) return LaurentPoly(1);
  if (degree(a) != degree(b)) return LaurentPoly();
  const auto key = std::make_pair(a, b);
  if (auto hit = core_cache_.find(key)) return *hit;
  // (x, th_j y) = t^{2[j,|y|]} (th_j, th_j) (_j r(x), y)
  const int j = b.front();
  const Word rest(b.begin() + 1, b.end());
  const RootVec jv = unit_vec(rank(), j);
  const RootVec rest_deg = degree(rest);
  LaurentPoly sum;
  RootVec pre(rank(), 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == j) {
      Word sub(a.begin(), a.begin() + k);
      sub.insert(sub.end(), a.begin() + k + 1, a.end());
      LaurentPoly inner = pairing_core(sub, rest);
      if (!inner.is_zero()) {
        const int te = datum_.t_free() ? 0 : datum_.skew(jv, pre);
        sum += inner.shifted({datum_.dot(jv, pre), te});
      }
    }
    ++pre[a[k]];
  }
  const int te = datum_.t_free() ? 0 : 2 * datum_.square(jv, rest_deg);
  sum = sum.shifted({0, te});
  return core_cache_.insert(key, std::move(sum));
}

Scalar FreeAlgebra::pairing(const Word& a, const Word& b) const {
  LaurentPoly core = pairing_core(a, b);
  if (core.is_zero()) return Scalar(0);
  Scalar r(core);
  for (int letter : a) {
    const int d = datum_.half_norm(letter);
    r *= Scalar(LaurentPoly(1)) / (Scalar(1) - Scalar::monomial(-2 * d, 0));
  }
  return r;
}

Scalar FreeAlgebra::pairing(const FreeElement& a, const FreeElement& b) const {
  Scalar s(0);
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Scalar p = pairing(wa, wb);
      if (!p.is_zero()) s += ca * cb * p;
    }
  }
  return s;
}

Scalar FreeAlgebra::tensor_pairing(const TensorElement& a, const TensorElement& b) const {
  Scalar s(0);
  for (const auto& [ka, ca] : a.terms) {
    const RootVec x1 = degree(ka.first);
    const RootVec x2 = degree(ka.second);
    const Scalar twist = datum_.vt(0, 2 * datum_.square(x1, x2));
    for (const auto& [kb, cb] : b.terms) {
      Scalar p1 = pairing(ka.first, kb.first);
      if (p1.is_zero()) continue;
      Scalar p2 = pairing(ka.second, kb.second);
      if (p2.is_zero()) continue;
      s += twist * ca * cb * p1 * p2;
    }
  }
  return s;
}

FreeElement FreeAlgebra::r_map(const Word& w, int i, Side side) const {
  FreeElement r;
  const RootVec iv = unit_vec(rank(), i);
  const RootVec total = degree(w);
  RootVec pre(rank(), 0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == i) {
      Word sub(w.begin(), w.begin() + k);
      sub.insert(sub.end(), w.begin() + k + 1, w.end());
      Scalar c;
      if (side == Side::left) {
        c = datum_.vt(datum_.dot(iv, pre), datum_.skew(iv, pre));
      } else {
        const RootVec post = total - pre - iv;
        c = datum_.vt(datum_.dot(iv, post), datum_.skew(post, iv));
      }
      r.add(sub, c);
    }
    ++pre[w[k]];
  }
  return r;
}

FreeElement FreeAlgebra::r_map(const FreeElement& x, int i, Side side) const {
  FreeElement r;
  for (const auto& [w, c] : x.terms()) r += c * r_map(w, i, side);
  return r;
}

FreeElement FreeAlgebra::divided_power(int i, int n) const {
  const int d = datum_.half_norm(i);
  return quantum_factorial(n, d, !datum_.t_free()).inverse() * FreeElement(Word(n, i));
}

FreeElement FreeAlgebra::serre_element(int i, int j) const {
  if (i == j) throw ConstraintError("Serre element needs i != j");
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= rank() || static_cast<std::size_t>(j) >= rank()) {
    throw ConstraintError("generator index out of range");
  }
  const int ii = datum_.dot(i, i);
  const int d = datum_.half_norm(i);
  const int n = 1 - 2 * datum_.dot(i, j) / ii;
  FreeElement r;
  for (int p = 0; p <= n; ++p) {
    const int pp = n - p;
    const int te = -p * (d * pp - datum_.angle(i, j) + datum_.angle(j, i));
    const Scalar c = Scalar(p % 2 == 0 ? 1 : -1) * datum_.vt(0, te);
    r += c * (divided_power(i, p) * theta(j) * divided_power(i, pp));
  }
  return r;
}

std::vector<Word> FreeAlgebra::words_of_degree(const RootVec& nu) const {
  if (nu.size() != rank()) throw ConstraintError("dimension mismatch");
  Word w;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] < 0) return {};
    w.insert(w.end(), nu[i], static_cast<int>(i));
  }
  std::vector<Word> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

ScalarMatrix FreeAlgebra::full_gram(const RootVec& nu) const {
  const auto words = words_of_degree(nu);
  ScalarMatrix g(words.size(), std::vector<Scalar>(words.size()));
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) g[a][b] = pairing(words[a], words[b]);
  }
  return g;
}

const FreeAlgebra::DegreeData& FreeAlgebra::degree_data(const RootVec& nu) const {
  if (auto hit = degree_cache_.find(nu)) return **hit;
  auto data = std::make_shared<DegreeData>();
  auto basis = std::make_shared<GradedBasis>();
  basis->degree = nu;
  basis->words = words_of_degree(nu);
  const std::size_t n = basis->words.size();
  const EvalPoint& p = probe_point();
  QMatrix q(n, std::vector<mpq_class>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      auto val = pairing_core(basis->words[a], basis->words[b]).evaluate(p.v, p.t);
      if (!val) throw InvariantError("pairing has a pole at the probe point");
      q[a][b] = *val;
      q[b][a] = *val;
    }
  }
  basis->selected = independent_rows(q);
  basis->rank = basis->selected.size();
  basis->radical_dim = n - basis->rank;
  for (auto s : basis->selected) basis->basis.push_back(basis->words[s]);
  const std::size_t d = basis->rank;
  ScalarMatrix core(d, std::vector<Scalar>(d));
  basis->gram.assign(d, std::vector<Scalar>(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      core[a][b] = Scalar(pairing_core(basis->basis[a], basis->basis[b]));
      basis->gram[a][b] = pairing(basis->basis[a], basis->basis[b]);
    }
  }
  data->core_inverse = inverse(core);
  data->basis = std::move(basis);
  return *degree_cache_.insert(nu, std::move(data));
}

std::shared_ptr<const GradedBasis> FreeAlgebra::graded_basis(const RootVec& nu) const {
  return degree_data(nu).basis;
}

std::vector<Scalar> FreeAlgebra::reduce(const Word& w) const {
  if (auto hit = reduce_cache_.find(w)) return *hit;
  const DegreeData& data = degree_data(degree(w));
  const auto& basis = data.basis->basis;
  std::vector<Scalar> out(basis.size());
  auto it = std::find(basis.begin(), basis.end(), w);
  if (it != basis.end()) {
    out[static_cast<std::size_t>(it - basis.begin())] = 1;
  } else {
    std::vector<Scalar> rhs(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) rhs[k] = Scalar(pairing_core(basis[k], w));
    out = mat_vec(data.core_inverse, rhs);
  }
  return reduce_cache_.insert(w, std::move(out));
}

}  // namespace uvt
