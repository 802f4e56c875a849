#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "uvt/module.hpp"
#include "uvt/pairing.hpp"

namespace uvt {

// Element of U^0: coefficient of K'_eta K_phi, keyed by (eta, phi).
class CartanElement {
 public:
  using Key = std::pair<RootVec, RootVec>;
  using Terms = std::map<Key, Scalar>;

  CartanElement() = default;
  static CartanElement monomial(const RootVec& eta, const RootVec& phi, const Scalar& c = Scalar(1));
  // Cartan terms of u (anything with an F or E letter is dropped).
  static CartanElement project(const UElement& u);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const RootVec& eta, const RootVec& phi) const;
  void add(const RootVec& eta, const RootVec& phi, const Scalar& c);
  // Every term has phi = -eta.
  bool in_flat() const;

  CartanElement& operator+=(const CartanElement& o);
  CartanElement& operator-=(const CartanElement& o);
  friend CartanElement operator+(CartanElement a, const CartanElement& b) { return a += b; }
  friend CartanElement operator-(CartanElement a, const CartanElement& b) { return a -= b; }
  friend CartanElement operator*(const Scalar& c, const CartanElement& x);
  friend CartanElement operator*(const CartanElement& a, const CartanElement& b);
  friend bool operator==(const CartanElement& a, const CartanElement& b) { return a.terms_ == b.terms_; }

  UElement to_element(const Algebra& alg) const;

 private:
  Terms terms_;
};

std::string render(const CartanElement& x);

// xi = gamma^{-rho} o pi.
CartanElement hc_xi(const Algebra& alg, const UElement& u);
// gamma^{-rho} on U^0.
CartanElement gamma_minus_rho(const CartanDatum& d, const CartanElement& x);

// varrho^lambda(K'_eta K_phi). `compatible` is the sign matching traces on
// modules, `printed` the opposite t-sign. ConstraintError if the exponent is
// not integral.
Scalar rho_char(const CartanDatum& d, const Weight& lambda, const RootVec& eta, const RootVec& phi,
                CartanSign sign = CartanSign::compatible);
// varrho^{0,lambda}(K'_eta K_phi) = v^{2(eta+phi).lambda}.
Scalar rho_zero_char(const CartanDatum& d, const Weight& lambda, const RootVec& eta, const RootVec& phi);
// varrho^{lambda,mu} = varrho^lambda varrho^{0,mu}.
Scalar rho_pair_char(const CartanDatum& d, const Weight& lambda, const Weight& mu, const RootVec& eta,
                     const RootVec& phi, CartanSign sign = CartanSign::compatible);

Scalar rho_char(const CartanDatum& d, const Weight& lambda, const CartanElement& u,
                CartanSign sign = CartanSign::compatible);
Scalar rho_zero_char(const CartanDatum& d, const Weight& lambda, const CartanElement& u);
Scalar rho_pair_char(const CartanDatum& d, const Weight& lambda, const Weight& mu, const CartanElement& u,
                     CartanSign sign = CartanSign::compatible);

// sigma(K'_eta K_{-eta}) = K'_{sigma eta} K_{-sigma eta}; ConstraintError off U^0_flat.
CartanElement weyl_on_flat(const WeylElement& sigma, const CartanElement& u);
WeylElement weyl_inverse(const CartanDatum& d, const WeylElement& sigma);

bool commutes_with(const Algebra& alg, const UElement& u, const std::vector<UElement>& xs);
// Exact check against every generator, cross-checked with ad(x)u = eps(x)u.
// InvariantError if the two routes disagree.
bool is_central(const Algebra& alg, const UElement& u);
// Same, for the subalgebra generated by E_j, F_j, j in J, and all K, K'.
bool is_central_in(const Algebra& alg, const std::vector<int>& J, const UElement& u);

// psi[a][b] = Psi(F_{f_a}, E_{e_b}) with f_a the F-basis words of mu and e_b the
// E-basis words of nu. Returns the u with
// <u | (y K'_mu^{-1}) K'_eta1 K_phi1 x> = (K'_eta1, K_phi)(K'_eta, K_phi1) Psi(y, x).
UElement lift_functional(const Pairing& p, const ScalarMatrix& psi, const RootVec& mu, const RootVec& nu,
                         const RootVec& eta, const RootVec& phi);

struct CentralCandidate {
  UElement element;
  bool certified = false;
  BiDegree degree;
};

// Lift of u -> tr_{L(lambda)}(u Theta). lambda dominant, in Q.
CentralCandidate z_lambda(const Pairing& p, const Weight& lambda);
// sum_mu dim L(lambda)_mu K'_mu K_{-mu}, from multiplicities alone.
CartanElement hc_image_of_trace(const CartanDatum& d, const Weight& lambda);
// |W|^{-1} sum_sigma K'_{sigma lambda} K_{-sigma lambda}.
CartanElement av(const CartanDatum& d, const Weight& lambda);

// Central elements of degree (eta, eta) of the shape F_f K_a K'_{eta-nu-a} E_e
// with tr(nu) <= max_tr and |a_i| <= box.
struct DegreeSolve {
  RootVec eta;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  // Rank of the commutator system at the probe point; = unknowns certifies
  // that the window holds no central element.
  std::size_t rank = 0;
  std::vector<UElement> solutions;  // filled when requested
};
DegreeSolve solve_central_degree(const Algebra& alg, const RootVec& eta, int max_tr, int box, bool want_solutions);

struct CriterionWindow {
  int eta_norm = 4;  // sum |eta_i|
  int max_tr = 2;
  int box = 2;
};

struct CriterionReport {
  std::vector<RootVec> kernel_basis;
  std::vector<std::pair<std::string, UElement>> certified;
  CriterionWindow window;
  std::vector<DegreeSolve> solves;  // kernel = {0} only
  std::vector<std::string> counterexamples;
  bool ok = true;
};
CriterionReport criterion(const Algebra& alg, const CriterionWindow& window = {});

// (U_J part, R_J part).
std::pair<UElement, UElement> decompose_UJ(const Pairing& p, const std::vector<int>& J, const UElement& u);

// Y_i = E_i F_i + (v_i^{-1} K_i + v_i K'_i) / (v_i - v_i^{-1})^2.
UElement casimir(const Algebra& alg, int i);

struct UJiReport {
  int index = 0;
  bool x_central = false;
  bool y_central = false;
  bool y_forms_agree = false;
  // Condition (1) elements K_x K'_y with the k they satisfy.
  std::vector<std::pair<UElement, int>> condition_elements;
  std::vector<UElement> certified;
  std::vector<std::string> counterexamples;
  // xi(z_lambda) = xi_J of its U_J part, one entry per lambda supplied.
  std::vector<std::pair<std::string, bool>> image_checks;
  bool ok = true;
};
UJiReport centre_UJi_check(const Pairing& p, int i, const std::vector<Weight>& lambdas = {}, int box = 1);

// Central element of degree (eta, eta) for eta in the antisymmetric kernel,
// obtained from a one-parameter central element by the Cartan substitution.
CentralCandidate lift_degree_eta(const Algebra& alg, const RootVec& eta);

}  // namespace uvt
