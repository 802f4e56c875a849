#pragma once

#include <memory>
#include <vector>

#include "uvt/algebra.hpp"

namespace uvt {

// Bases u_j of U^+_nu and v_i of U^-_{-nu} with (v_i, u_j) = delta_ij.
struct DualBasisPair {
  RootVec degree;
  std::vector<Word> e_words;  // u_j = E_{e_words[j]}
  std::vector<Word> f_words;  // F-side basis words
  ScalarMatrix dual;          // v_i = sum_a dual[i][a] F_{f_words[a]}
  std::vector<UElement> u;
  std::vector<UElement> v;
};

// t-sign of (K'_mu, K_nu). `compatible` is v^{mu.nu} t^{<mu,nu> - <nu,mu>}, the
// sign for which the pairing respects the K-E and K'-F relations; `printed`
// is the opposite t-sign.
enum class CartanSign { compatible, printed };

class Pairing {
 public:
  explicit Pairing(const Algebra& alg, CartanSign sign = CartanSign::compatible) : alg_(alg), convention_(sign) {}

  const Algebra& algebra() const { return alg_; }

  CartanSign convention() const { return convention_; }

  // (K'_mu, K_nu).
  Scalar cartan_pair(const RootVec& mu, const RootVec& nu) const;
  // (F_f, E_e) on words.
  Scalar word_pair(const Word& f, const Word& e) const;
  // x in the lower Borel, y in the upper Borel.
  Scalar skew_pair(const Monomial& x, const Monomial& y) const;
  Scalar skew_pair(const UElement& x, const UElement& y) const;

  // <.|.> extended bilinearly over normal-form terms.
  Scalar ad_form(const Monomial& a, const Monomial& b) const;
  Scalar ad_form(const UElement& a, const UElement& b) const;

  // (F_a, E_b) for the F- and E-basis words of degree nu.
  ScalarMatrix gram(const RootVec& nu) const;
  std::shared_ptr<const DualBasisPair> dual_basis(const RootVec& nu) const;

  // chi_{eta,phi}(eta1, phi1) = (K'_eta, K_phi1)(K'_eta1, K_phi).
  Scalar chi(const RootVec& eta, const RootVec& phi, const RootVec& eta1, const RootVec& phi1) const;

  // 2 rho . nu.
  int two_rho_dot(const RootVec& nu) const;

 private:
  const Algebra& alg_;
  CartanSign convention_;
  mutable MemoCache<std::pair<Word, Word>, Scalar> word_cache_;
  mutable MemoCache<RootVec, std::shared_ptr<const DualBasisPair>> dual_cache_;
};

}  // namespace uvt
