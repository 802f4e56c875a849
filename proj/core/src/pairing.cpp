#include "uvt/pairing.hpp"

#include "uvt/error.hpp"

namespace uvt {

Scalar Pairing::cartan_pair(const RootVec& mu, const RootVec& nu) const {
  const CartanDatum& d = alg_.datum();
  const int te = d.skew(mu, nu);
  return d.vt(d.dot(mu, nu), convention_ == CartanSign::printed ? -te : te);
}

Scalar Pairing::word_pair(const Word& f, const Word& e) const {
  if (f.size() != e.size()) return 0;
  if (f.empty()) return 1;
  const std::size_t n = alg_.rank();
  if (word_degree(f, n) != word_degree(e, n)) return 0;
  const auto key = std::make_pair(f, e);
  if (auto hit = word_cache_.find(key)) return *hit;

  // (F_b F_rest, E_u) = sum over u_k = b of s_k (F_b, E_b) (F_rest, E_{u minus k}),
  // s_k the factor from K_pre E_b = s_k E_b K_pre, pre = u_1..u_{k-1}.
  const CartanDatum& d = alg_.datum();
  const int b = f.front();
  const Word rest(f.begin() + 1, f.end());
  const int h = d.half_norm(b);
  const Scalar base = (Scalar::monomial(-h, 0) - Scalar::monomial(h, 0)).inverse();
  Scalar acc;
  RootVec pre = zero_vec(n);
  const RootVec bv = unit_vec(n, b);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == b) {
      Word sub(e.begin(), e.begin() + k);
      sub.insert(sub.end(), e.begin() + k + 1, e.end());
      const Scalar inner = word_pair(rest, sub);
      if (!inner.is_zero()) acc += d.vt(d.dot(bv, pre), d.skew(bv, pre)) * inner;
    }
    pre[e[k]] += 1;
  }
  acc *= base;
  return word_cache_.insert(key, acc);
}

Scalar Pairing::skew_pair(const Monomial& x, const Monomial& y) const {
  if (!x.e.empty() || !is_zero(x.k) || !y.f.empty() || !is_zero(y.kp)) {
    throw ConstraintError("skew pairing needs x in the lower Borel and y in the upper Borel");
  }
  const Scalar w = word_pair(x.f, y.e);
  if (w.is_zero()) return 0;
  return cartan_pair(x.kp + word_degree(x.f, alg_.rank()), y.k) * w;
}

Scalar Pairing::skew_pair(const UElement& x, const UElement& y) const {
  if (!alg_.in_lower_borel(x) || !alg_.in_upper_borel(y)) {
    throw ConstraintError("skew pairing needs x in the lower Borel and y in the upper Borel");
  }
  Scalar acc;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      const Scalar p = skew_pair(mx, my);
      if (!p.is_zero()) acc += cx * cy * p;
    }
  }
  return acc;
}

int Pairing::two_rho_dot(const RootVec& nu) const {
  const CartanDatum& d = alg_.datum();
  const mpq_class r = 2 * d.dot(d.rho(), to_weight(nu));
  if (r.get_den() != 1) throw InvariantError("2 rho . nu is not an integer");
  return static_cast<int>(r.get_num().get_si());
}

Scalar Pairing::ad_form(const Monomial& a, const Monomial& b) const {
  const std::size_t n = alg_.rank();
  // Write K_k K'_kp as K'_{-nu} K'_eta K_phi with nu = |f|.
  const RootVec nu = word_degree(a.f, n);
  const RootVec nu1 = word_degree(b.f, n);
  if (nu != word_degree(b.e, n) || nu1 != word_degree(a.e, n)) return 0;
  const Scalar y_x1 = word_pair(a.f, b.e);
  if (y_x1.is_zero()) return 0;
  const Scalar y1_x = word_pair(b.f, a.e);
  if (y1_x.is_zero()) return 0;
  const RootVec eta = a.kp + nu;
  const RootVec eta1 = b.kp + nu1;
  return y_x1 * y1_x * cartan_pair(eta, b.k) * cartan_pair(eta1, a.k) *
         Scalar::monomial(two_rho_dot(nu), 0);
}

Scalar Pairing::ad_form(const UElement& a, const UElement& b) const {
  Scalar acc;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const Scalar p = ad_form(ma, mb);
      if (!p.is_zero()) acc += ca * cb * p;
    }
  }
  return acc;
}

ScalarMatrix Pairing::gram(const RootVec& nu) const {
  const auto fw = alg_.F_basis(nu);
  const auto ew = alg_.E_basis(nu);
  ScalarMatrix g(fw.size(), std::vector<Scalar>(ew.size()));
  for (std::size_t a = 0; a < fw.size(); ++a) {
    for (std::size_t b = 0; b < ew.size(); ++b) g[a][b] = word_pair(fw[a], ew[b]);
  }
  return g;
}

std::shared_ptr<const DualBasisPair> Pairing::dual_basis(const RootVec& nu) const {
  if (auto hit = dual_cache_.find(nu)) return *hit;
  if (!is_nonnegative(nu)) throw ConstraintError("dual basis needs nu in Q^+");
  auto out = std::make_shared<DualBasisPair>();
  out->degree = nu;
  out->e_words = alg_.E_basis(nu);
  out->f_words = alg_.F_basis(nu);
  const ScalarMatrix g = gram(nu);
  if (g.size() != out->e_words.size()) throw InvariantError("pairing degenerate at degree " + render_rootvec(nu));
  try {
    out->dual = inverse(g);
  } catch (const InvariantError&) {
    throw InvariantError("pairing degenerate at degree " + render_rootvec(nu));
  }
  const std::size_t n = alg_.rank();
  for (const auto& w : out->e_words) out->u.emplace_back(Monomial{{}, zero_vec(n), zero_vec(n), w}, 1);
  for (std::size_t i = 0; i < out->dual.size(); ++i) {
    UElement vi;
    for (std::size_t a = 0; a < out->f_words.size(); ++a) {
      vi.add(Monomial{out->f_words[a], zero_vec(n), zero_vec(n), {}}, out->dual[i][a]);
    }
    out->v.push_back(std::move(vi));
  }
  return dual_cache_.insert(nu, std::move(out));
}

Scalar Pairing::chi(const RootVec& eta, const RootVec& phi, const RootVec& eta1, const RootVec& phi1) const {
  return cartan_pair(eta, phi1) * cartan_pair(eta1, phi);
}

}  // namespace uvt
