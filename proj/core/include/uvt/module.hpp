#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "uvt/algebra.hpp"
#include "uvt/linalg.hpp"

namespace uvt {

using Vector = std::vector<Scalar>;

// Weight space of weight lambda - depth. Basis vector k is F_{labels[k]} v_lambda
// (modulo the maximal submodule for simple modules).
struct WeightSpace {
  RootVec depth;
  Weight weight;
  std::size_t offset = 0;
  std::size_t dim = 0;
  std::vector<Word> labels;
};

// Finite weight module generated by a highest weight vector.
//
// When <lambda,i> - <i,lambda> is not an integer the t-power of K_i, K'_i, E_i
// cannot be written over Q(v,t). The fractional part q_i is then kept aside:
// the stored K_i, K'_i, E_i matrices are the true ones times t^{-q_i}, and every
// defining relation still holds for them. act() and matrix() put the factor
// back and refuse monomials whose total factor is not an integral power of t.
class WeightModule {
 public:
  const Algebra& algebra() const { return *alg_; }
  const Weight& highest_weight() const { return lambda_; }
  std::size_t dim() const { return dim_; }
  const std::vector<WeightSpace>& spaces() const { return spaces_; }
  std::optional<std::size_t> space_index(const RootVec& depth) const;
  // Largest tr(depth) kept; F maps the last layer to zero in a truncated Verma.
  int window() const { return window_; }
  bool truncated() const { return truncated_; }
  const std::vector<mpq_class>& t_shift() const { return t_shift_; }

  Vector zero() const { return Vector(dim_); }
  Vector basis_vector(std::size_t k) const;
  Vector highest_vector() const { return basis_vector(0); }
  // Index of the weight space holding basis vector k.
  std::size_t space_of(std::size_t k) const { return owner_[k]; }

  Vector apply_E(int i, const Vector& x) const;
  Vector apply_F(int i, const Vector& x) const;
  Vector apply_K(int i, int power, const Vector& x) const;
  Vector apply_Kp(int i, int power, const Vector& x) const;
  // Scalar by which K_i (resp. K'_i) acts on a weight space, without t^{q_i}.
  const Scalar& K_eigen(int i, std::size_t space) const { return k_eigen_[i][space]; }
  const Scalar& Kp_eigen(int i, std::size_t space) const { return kp_eigen_[i][space]; }

  ScalarMatrix E(int i) const;
  ScalarMatrix F(int i) const;
  ScalarMatrix K(int i, int power = 1) const;
  ScalarMatrix Kp(int i, int power = 1) const;

  Vector act(const UElement& u, const Vector& x) const;
  ScalarMatrix matrix(const UElement& u) const;

 private:
  using Column = std::map<std::size_t, Scalar>;

  friend WeightModule verma_truncated(const Algebra& alg, const Weight& lambda, int depth);
  friend WeightModule simple_module(const Algebra& alg, const Weight& lambda);
  friend WeightModule simple_module_from_verma(const Algebra& alg, const Weight& lambda, std::optional<int> depth);

  WeightModule(const Algebra& alg, Weight lambda);
  void add_space(const RootVec& depth, std::vector<Word> labels);
  void set_eigenvalues();
  Vector apply_columns(const std::vector<Column>& m, const Vector& x) const;
  ScalarMatrix dense(const std::vector<Column>& m) const;
  Vector act_monomial(const Monomial& m, const Vector& x) const;

  const Algebra* alg_;
  Weight lambda_;
  std::vector<mpq_class> t_shift_;
  std::vector<WeightSpace> spaces_;
  std::map<RootVec, std::size_t> index_;
  std::vector<std::size_t> owner_;
  std::size_t dim_ = 0;
  int window_ = 0;
  bool truncated_ = false;
  std::vector<std::vector<Column>> e_;
  std::vector<std::vector<Column>> f_;
  std::vector<std::vector<Scalar>> k_eigen_;
  std::vector<std::vector<Scalar>> kp_eigen_;
};

// Weight spaces lambda - nu with tr(nu) <= depth of the Verma module.
WeightModule verma_truncated(const Algebra& alg, const Weight& lambda, int depth);

// Weight vectors below the top killed by every E_i.
std::vector<Vector> singular_vectors(const WeightModule& m);

// L(lambda) for dominant lambda, built one layer of weights at a time: below the
// top a vector of L(lambda) is zero iff every E_i kills it, so each weight space
// is the span of the F_i-images of the layer above, cut down to the rank of the
// joint E-map.
WeightModule simple_module(const Algebra& alg, const Weight& lambda);

// The same module as the quotient of a Verma truncation by the submodule
// generated by its singular vectors. Slower; used as a cross-check.
WeightModule simple_module_from_verma(const Algebra& alg, const Weight& lambda, std::optional<int> depth = std::nullopt);

// Default Verma depth used by simple_module_from_verma.
int simple_module_depth(const CartanDatum& datum, const Weight& lambda);

// Diagonal of Theta: v^{-2 rho . mu} on the weight space of mu, one entry per basis vector.
std::vector<Scalar> theta(const WeightModule& m);

// tr(u Theta).
Scalar quantum_trace(const WeightModule& m, const UElement& u);

// f(u.m), f given by its coordinates in the dual basis.
Scalar matrix_coefficient(const WeightModule& m, const Vector& f, const Vector& x, const UElement& u);

}  // namespace uvt
