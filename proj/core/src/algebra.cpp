#include "uvt/algebra.hpp"

#include <tuple>

#include "uvt/error.hpp"

namespace uvt {

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  LengthLex ll;
  if (a.f != b.f) return ll(b.f, a.f);
  if (a.k != b.k) return a.k > b.k;
  if (a.kp != b.kp) return a.kp > b.kp;
  if (a.e != b.e) return ll(b.e, a.e);
  return false;
}

bool MonomialPairOrder::operator()(const std::pair<Monomial, Monomial>& a,
                                   const std::pair<Monomial, Monomial>& b) const {
  MonomialOrder o;
  if (o(a.first, b.first)) return true;
  if (o(b.first, a.first)) return false;
  return o(a.second, b.second);
}

UElement::UElement(Monomial m, Scalar c) {
  if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
}

Scalar UElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void UElement::add(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UElement& UElement::operator+=(const UElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

UElement& UElement::operator-=(const UElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

UElement UElement::operator-() const {
  UElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

UElement operator*(const Scalar& c, const UElement& x) {
  UElement r;
  if (c.is_zero()) return r;
  for (const auto& [m, a] : x.terms_) r.terms_.emplace(m, c * a);
  return r;
}

std::optional<Scalar> UElement::scalar_value() const {
  if (terms_.empty()) return Scalar(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (!m.f.empty() || !m.e.empty() || !uvt::is_zero(m.k) || !uvt::is_zero(m.kp)) return std::nullopt;
  return c;
}

void TensorU::add(const Monomial& a, const Monomial& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorU TensorU::pure(const UElement& a, const UElement& b) {
  TensorU r;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) r.add(ma, mb, ca * cb);
  }
  return r;
}

Algebra::Algebra(CartanDatum datum) : free_(std::move(datum)) { free_.datum().require_symmetric_type(); }

UElement Algebra::one() const { return scalar(1); }

UElement Algebra::scalar(const Scalar& c) const {
  return UElement(Monomial{{}, zero_vec(rank()), zero_vec(rank()), {}}, c);
}

namespace {

void check_index(int i, std::size_t rank) {
  if (i < 0 || static_cast<std::size_t>(i) >= rank) {
    throw ConstraintError("generator index " + std::to_string(i + 1) + " out of range");
  }
}

}  // namespace

UElement Algebra::E(int i) const {
  check_index(i, rank());
  return UElement(Monomial{{}, zero_vec(rank()), zero_vec(rank()), {i}}, 1);
}

UElement Algebra::F(int i) const {
  check_index(i, rank());
  return UElement(Monomial{{i}, zero_vec(rank()), zero_vec(rank()), {}}, 1);
}

UElement Algebra::K(int i, int power) const {
  check_index(i, rank());
  RootVec k = zero_vec(rank());
  k[i] = power;
  return UElement(Monomial{{}, k, zero_vec(rank()), {}}, 1);
}

UElement Algebra::Kp(int i, int power) const {
  check_index(i, rank());
  RootVec kp = zero_vec(rank());
  kp[i] = power;
  return UElement(Monomial{{}, zero_vec(rank()), kp, {}}, 1);
}

UElement Algebra::cartan(const RootVec& k, const RootVec& kp) const {
  if (k.size() != rank() || kp.size() != rank()) throw ConstraintError("dimension mismatch");
  return UElement(Monomial{{}, k, kp, {}}, 1);
}

std::vector<std::pair<Word, Scalar>> Algebra::reduce_E(const Word& w) const {
  if (w.size() <= 1) return {{w, Scalar(1)}};
  const auto basis = free_.graded_basis(free_.degree(w));
  const auto coeffs = free_.reduce(w);
  std::vector<std::pair<Word, Scalar>> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) out.emplace_back(basis->basis[k], coeffs[k]);
  }
  return out;
}

std::vector<std::pair<Word, Scalar>> Algebra::reduce_F(const Word& w) const {
  if (w.size() <= 1) return {{w, Scalar(1)}};
  const Word theta = reversed(w);
  const auto basis = free_.graded_basis(free_.degree(theta));
  const auto coeffs = free_.reduce(theta);
  std::vector<std::pair<Word, Scalar>> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) out.emplace_back(reversed(basis->basis[k]), coeffs[k]);
  }
  return out;
}

std::vector<Word> Algebra::E_basis(const RootVec& nu) const { return free_.graded_basis(nu)->basis; }

std::vector<Word> Algebra::F_basis(const RootVec& nu) const {
  std::vector<Word> out;
  for (const auto& w : free_.graded_basis(nu)->basis) out.push_back(reversed(w));
  return out;
}

UElement Algebra::E_word(const Word& w) const {
  UElement r;
  for (const auto& [b, c] : reduce_E(w)) r.add(Monomial{{}, zero_vec(rank()), zero_vec(rank()), b}, c);
  return r;
}

UElement Algebra::F_word(const Word& w) const {
  UElement r;
  for (const auto& [b, c] : reduce_F(w)) r.add(Monomial{b, zero_vec(rank()), zero_vec(rank()), {}}, c);
  return r;
}

UElement Algebra::from_theta_E(const FreeElement& x) const {
  UElement r;
  for (const auto& [w, c] : x.terms()) r += c * E_word(w);
  return r;
}

UElement Algebra::from_theta_F(const FreeElement& x) const {
  UElement r;
  for (const auto& [w, c] : x.terms()) r += c * F_word(reversed(w));
  return r;
}

Scalar Algebra::cartan_commute_factor(const RootVec& k, const RootVec& kp, const RootVec& deg) const {
  const CartanDatum& d = datum();
  return d.vt(d.dot(kp - k, deg), d.skew(k + kp, deg));
}

Scalar Algebra::quantum_denominator(int i) const {
  const int h = datum().half_norm(i);
  return Scalar::monomial(h, 0) - Scalar::monomial(-h, 0);
}

std::vector<Algebra::RawTerm> Algebra::straighten_letter(int a, const Word& f) const {
  std::vector<RawTerm> out;
  const RootVec zero = zero_vec(rank());
  out.push_back({f, zero, zero, Word{a}, Scalar(1)});
  const Scalar inv = quantum_denominator(a).inverse();
  const RootVec ka = unit_vec(rank(), a);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] != a) continue;
    Word w(f.begin(), f.begin() + k);
    const Word post(f.begin() + k + 1, f.end());
    w.insert(w.end(), post.begin(), post.end());
    const RootVec pd = word_degree(post, rank());
    out.push_back({w, ka, zero, {}, inv * cartan_commute_factor(ka, zero, pd)});
    out.push_back({w, zero, ka, {}, -inv * cartan_commute_factor(zero, ka, pd)});
  }
  return out;
}

const std::vector<Algebra::RawTerm>& Algebra::straighten(const Word& e, const Word& f) const {
  const auto key = std::make_pair(e, f);
  if (auto hit = straighten_cache_.find(key)) return **hit;
  const RootVec zero = zero_vec(rank());
  RawMap acc;
  if (e.empty() || f.empty()) {
    acc[{f, zero, zero, e}] = 1;
  } else {
    const int a = e.front();
    const Word rest(e.begin() + 1, e.end());
    const auto& inner = straighten(rest, f);
    for (const auto& s : inner) {
      for (const auto& t : straighten_letter(a, s.f)) {
        Word ew = t.e;
        ew.insert(ew.end(), s.e.begin(), s.e.end());
        const Scalar c = s.c * t.c * cartan_commute_factor(s.k, s.kp, word_degree(t.e, rank()));
        auto [it, inserted] = acc.try_emplace({t.f, t.k + s.k, t.kp + s.kp, ew}, c);
        if (!inserted) it->second += c;
      }
    }
  }
  auto out = std::make_shared<std::vector<RawTerm>>();
  for (auto& [key2, c] : acc) {
    if (c.is_zero()) continue;
    out->push_back({std::get<0>(key2), std::get<1>(key2), std::get<2>(key2), std::get<3>(key2), c});
  }
  return *straighten_cache_.insert(key, std::move(out));
}

void Algebra::reduce_into(const RawMap& raw, UElement& out) const {
  for (const auto& [key, c] : raw) {
    if (c.is_zero()) continue;
    const auto& [f, k, kp, e] = key;
    const auto fr = reduce_F(f);
    const auto er = reduce_E(e);
    for (const auto& [fb, fc] : fr) {
      for (const auto& [eb, ec] : er) out.add(Monomial{fb, k, kp, eb}, c * fc * ec);
    }
  }
}

UElement Algebra::multiply(const UElement& a, const UElement& b) const {
  RawMap raw;
  auto accumulate = [&raw](Word f, RootVec k, RootVec kp, Word e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = raw.try_emplace({std::move(f), std::move(k), std::move(kp), std::move(e)}, c);
    if (!inserted) it->second += c;
  };
  for (const auto& [m1, c1] : a.terms()) {
    for (const auto& [m2, c2] : b.terms()) {
      const Scalar c12 = c1 * c2;
      if (m1.e.empty() || m2.f.empty()) {
        Word f = m1.f;
        f.insert(f.end(), m2.f.begin(), m2.f.end());
        Word e = m1.e;
        e.insert(e.end(), m2.e.begin(), m2.e.end());
        const Scalar c = c12 * cartan_commute_factor(m1.k, m1.kp, word_degree(m2.f, rank())) *
                         cartan_commute_factor(m2.k, m2.kp, word_degree(m1.e, rank()));
        accumulate(std::move(f), m1.k + m2.k, m1.kp + m2.kp, std::move(e), c);
        continue;
      }
      for (const auto& s : straighten(m1.e, m2.f)) {
        Word f = m1.f;
        f.insert(f.end(), s.f.begin(), s.f.end());
        Word e = s.e;
        e.insert(e.end(), m2.e.begin(), m2.e.end());
        const Scalar c = c12 * s.c * cartan_commute_factor(m1.k, m1.kp, word_degree(s.f, rank())) *
                         cartan_commute_factor(m2.k, m2.kp, word_degree(s.e, rank()));
        accumulate(std::move(f), m1.k + s.k + m2.k, m1.kp + s.kp + m2.kp, std::move(e), c);
      }
    }
  }
  UElement out;
  reduce_into(raw, out);
  return out;
}

UElement Algebra::multiply(std::initializer_list<UElement> xs) const {
  UElement acc = one();
  for (const auto& x : xs) acc = multiply(acc, x);
  return acc;
}

UElement Algebra::commutator(const UElement& a, const UElement& b) const {
  return multiply(a, b) - multiply(b, a);
}

UElement Algebra::invert_monomial(const UElement& a) const {
  if (a.size() != 1) throw ConstraintError("only scalar multiples of K_k K'_k' are invertible");
  const auto& [m, c] = *a.terms().begin();
  if (!m.f.empty() || !m.e.empty()) throw ConstraintError("only scalar multiples of K_k K'_k' are invertible");
  return UElement(Monomial{{}, -m.k, -m.kp, {}}, c.inverse());
}

UElement Algebra::power(const UElement& a, int n) const {
  if (n < 0) return power(invert_monomial(a), -n);
  UElement r = one();
  UElement base = a;
  while (n > 0) {
    if (n & 1) r = multiply(r, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return r;
}

TensorU Algebra::tensor_multiply(const TensorU& a, const TensorU& b) const {
  TensorU r;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const UElement x = multiply(UElement(ka.first, 1), UElement(kb.first, 1));
      if (x.is_zero()) continue;
      const UElement y = multiply(UElement(ka.second, 1), UElement(kb.second, 1));
      const Scalar c = ca * cb;
      for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) r.add(mx, my, c * cx * cy);
      }
    }
  }
  return r;
}

TensorU Algebra::coproduct(const UElement& a) const {
  TensorU r;
  const RootVec zero = zero_vec(rank());
  const Monomial unit{{}, zero, zero, {}};
  for (const auto& [m, c] : a.terms()) {
    TensorU acc;
    acc.add(unit, unit, c);
    for (int i : m.f) {
      TensorU g;
      g.add(unit, Monomial{{i}, zero, zero, {}}, 1);
      g.add(Monomial{{i}, zero, zero, {}}, Monomial{{}, zero, unit_vec(rank(), i), {}}, 1);
      acc = tensor_multiply(acc, g);
    }
    if (!is_zero(m.k) || !is_zero(m.kp)) {
      TensorU g;
      const Monomial cm{{}, m.k, m.kp, {}};
      g.add(cm, cm, 1);
      acc = tensor_multiply(acc, g);
    }
    for (int i : m.e) {
      TensorU g;
      g.add(Monomial{{}, zero, zero, {i}}, unit, 1);
      g.add(Monomial{{}, unit_vec(rank(), i), zero, {}}, Monomial{{}, zero, zero, {i}}, 1);
      acc = tensor_multiply(acc, g);
    }
    for (const auto& [k, v] : acc.terms()) r.add(k.first, k.second, v);
  }
  return r;
}

UElement Algebra::contract(const TensorU& t) const {
  UElement r;
  for (const auto& [k, c] : t.terms()) r += c * multiply(UElement(k.first, 1), UElement(k.second, 1));
  return r;
}

UElement Algebra::antipode(const UElement& a, bool inverse) const {
  UElement r;
  const RootVec zero = zero_vec(rank());
  for (const auto& [m, c] : a.terms()) {
    UElement acc = scalar(c);
    // Anti-homomorphism: S(F_w C E_u) = S(E_u) S(C) S(F_w), letters reversed.
    for (auto it = m.e.rbegin(); it != m.e.rend(); ++it) {
      const int i = *it;
      const UElement s = inverse ? -multiply(E(i), K(i, -1)) : -multiply(K(i, -1), E(i));
      acc = multiply(acc, s);
    }
    acc = multiply(acc, cartan(-m.k, -m.kp));
    for (auto it = m.f.rbegin(); it != m.f.rend(); ++it) {
      const int i = *it;
      const UElement s = inverse ? -multiply(Kp(i, -1), F(i)) : -multiply(F(i), Kp(i, -1));
      acc = multiply(acc, s);
    }
    r += acc;
  }
  return r;
}

Scalar Algebra::counit(const UElement& a) const {
  Scalar s(0);
  for (const auto& [m, c] : a.terms()) {
    if (m.f.empty() && m.e.empty()) s += c;
  }
  return s;
}

UElement Algebra::adjoint(const UElement& u, const UElement& m) const {
  UElement r;
  const TensorU du = coproduct(u);
  for (const auto& [k, c] : du.terms()) {
    const UElement left = multiply(UElement(k.first, c), m);
    if (left.is_zero()) continue;
    r += multiply(left, antipode(UElement(k.second, 1)));
  }
  return r;
}

std::map<Monomial3, Scalar> Algebra::coproduct_left_twice(const UElement& a) const {
  std::map<Monomial3, Scalar> out;
  const TensorU da = coproduct(a);
  for (const auto& [k, c] : da.terms()) {
    const TensorU dk = coproduct(UElement(k.first, 1));
    for (const auto& [k2, c2] : dk.terms()) {
      auto& slot = out[Monomial3{k2.first, k2.second, k.second}];
      slot += c * c2;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::map<Monomial3, Scalar> Algebra::coproduct_right_twice(const UElement& a) const {
  std::map<Monomial3, Scalar> out;
  const TensorU da = coproduct(a);
  for (const auto& [k, c] : da.terms()) {
    const TensorU dk = coproduct(UElement(k.second, 1));
    for (const auto& [k2, c2] : dk.terms()) {
      auto& slot = out[Monomial3{k.first, k2.first, k2.second}];
      slot += c * c2;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

bool Algebra::in_positive_part(const UElement& a) const {
  for (const auto& [m, c] : a.terms()) {
    if (!m.f.empty() || !is_zero(m.k) || !is_zero(m.kp)) return false;
  }
  return true;
}

bool Algebra::in_negative_part(const UElement& a) const {
  for (const auto& [m, c] : a.terms()) {
    if (!m.e.empty() || !is_zero(m.k) || !is_zero(m.kp)) return false;
  }
  return true;
}

bool Algebra::in_upper_borel(const UElement& a) const {
  for (const auto& [m, c] : a.terms()) {
    if (!m.f.empty() || !is_zero(m.kp)) return false;
  }
  return true;
}

bool Algebra::in_lower_borel(const UElement& a) const {
  for (const auto& [m, c] : a.terms()) {
    if (!m.e.empty() || !is_zero(m.k)) return false;
  }
  return true;
}

std::pair<UElement, UElement> Algebra::commutation_maps(const UElement& x, int i) const {
  check_index(i, rank());
  const RootVec ki = unit_vec(rank(), i);
  const RootVec zero = zero_vec(rank());
  const Scalar denom = quantum_denominator(i);
  UElement first;
  UElement second;
  if (x.is_zero()) return {first, second};
  if (in_positive_part(x)) {
    // x F_i - F_i x = (p_i(x) K_i - K'_i p'_i(x)) / (v_i - v_i^{-1})
    const UElement c = commutator(x, F(i));
    for (const auto& [m, coeff] : c.terms()) {
      if (!m.f.empty()) throw InvariantError("commutator with F_i left U^0 U^+");
      const RootVec deg = word_degree(m.e, rank());
      if (m.k == ki && m.kp == zero) {
        first.add(Monomial{{}, zero, zero, m.e}, coeff * denom / cartan_commute_factor(ki, zero, deg));
      } else if (m.k == zero && m.kp == ki) {
        second.add(Monomial{{}, zero, zero, m.e}, -coeff * denom);
      } else {
        throw InvariantError("unexpected Cartan factor in x F_i - F_i x");
      }
    }
    return {first, second};
  }
  if (in_negative_part(x)) {
    // x E_i - E_i x = (a_i(x) K'_i - K_i a'_i(x)) / (v_i - v_i^{-1})
    const UElement c = commutator(x, E(i));
    for (const auto& [m, coeff] : c.terms()) {
      if (!m.e.empty()) throw InvariantError("commutator with E_i left U^- U^0");
      const RootVec deg = word_degree(m.f, rank());
      if (m.k == zero && m.kp == ki) {
        first.add(Monomial{m.f, zero, zero, {}}, coeff * denom);
      } else if (m.k == ki && m.kp == zero) {
        second.add(Monomial{m.f, zero, zero, {}}, -coeff * denom / cartan_commute_factor(ki, zero, deg));
      } else {
        throw InvariantError("unexpected Cartan factor in x E_i - E_i x");
      }
    }
    return {first, second};
  }
  throw ConstraintError("commutation maps need x in U^+ or in U^-");
}

BiDegree Algebra::degree(const Monomial& m) const {
  const RootVec c = m.k + m.kp;
  return {word_degree(m.e, rank()) + c, word_degree(m.f, rank()) + c};
}

std::optional<BiDegree> Algebra::degree(const UElement& a) const {
  if (a.is_zero()) return BiDegree{zero_vec(rank()), zero_vec(rank())};
  std::optional<BiDegree> d;
  for (const auto& [m, c] : a.terms()) {
    BiDegree md = degree(m);
    if (d && !(*d == md)) return std::nullopt;
    d = std::move(md);
  }
  return d;
}

std::map<BiDegree, UElement> Algebra::split_by_degree(const UElement& a) const {
  std::map<BiDegree, UElement> out;
  for (const auto& [m, c] : a.terms()) out[degree(m)].add(m, c);
  return out;
}

int Algebra::star_twist(const BiDegree& x, const BiDegree& y, StarSign sign) const {
  const CartanDatum& d = datum();
  const int bracket = d.square(x.second, y.second) - d.square(x.first, y.first);
  return sign == StarSign::printed ? -bracket : bracket;
}

UElement Algebra::star_multiply(const UElement& a, const UElement& b, StarSign sign) const {
  UElement r;
  const auto pa = split_by_degree(a);
  const auto pb = split_by_degree(b);
  for (const auto& [da, xa] : pa) {
    for (const auto& [db, xb] : pb) {
      const int e = star_twist(da, db, sign);
      r += datum().vt(0, e) * multiply(xa, xb);
    }
  }
  return r;
}

}  // namespace uvt
