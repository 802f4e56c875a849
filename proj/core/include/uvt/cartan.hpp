#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uvt/rational.hpp"

namespace uvt {

// Integer coordinates over the simple roots.
using RootVec = std::vector<int>;
// Rational coordinates over the simple roots.
using Weight = std::vector<mpq_class>;

RootVec zero_vec(std::size_t rank);
RootVec unit_vec(std::size_t rank, std::size_t i);
RootVec operator+(const RootVec& a, const RootVec& b);
RootVec operator-(const RootVec& a, const RootVec& b);
RootVec operator-(const RootVec& a);
RootVec operator*(int k, const RootVec& a);
int tr(const RootVec& a);
bool is_zero(const RootVec& a);
bool is_nonnegative(const RootVec& a);
Weight to_weight(const RootVec& a);
// nullopt unless every coordinate is an integer.
std::optional<RootVec> to_rootvec(const Weight& w);
std::string render_rootvec(const RootVec& a);  // "a1+2*a2", "0"
std::string render_weight(const Weight& w);

enum class FormKind { angle, square, dot };

struct WeylElement {
  std::vector<int> word;                 // simple reflections, applied right to left
  std::vector<std::vector<int>> matrix;  // action on root coordinates
};

struct WeylGroup {
  std::vector<WeylElement> elements;  // elements[0] is the identity
  std::size_t order() const { return elements.size(); }
};

class CartanDatum {
 public:
  // Validates the axioms on Omega; throws ConstraintError otherwise.
  explicit CartanDatum(std::vector<std::vector<int>> omega, std::string name = "custom");

  // "A1".."A9" with Omega_ii = 1, Omega_{i,i+1} = -1.
  static CartanDatum preset(const std::string& type);

  std::size_t rank() const { return omega_.size(); }
  const std::vector<std::vector<int>>& omega() const { return omega_; }
  const std::string& name() const { return name_; }
  bool symmetric_type() const;
  void require_symmetric_type() const;

  // Copy in which every t-exponent is suppressed (the one-parameter algebra).
  CartanDatum one_parameter() const;
  bool t_free() const { return t_free_; }
  // v^ve t^te, with te dropped in one-parameter mode.
  Scalar vt(int ve, int te) const { return Scalar::monomial(ve, t_free_ ? 0 : te); }

  int form(FormKind kind, const RootVec& a, const RootVec& b) const;
  int angle(const RootVec& a, const RootVec& b) const;
  int square(const RootVec& a, const RootVec& b) const;
  int dot(const RootVec& a, const RootVec& b) const;
  // <a,b> - <b,a>
  int skew(const RootVec& a, const RootVec& b) const;
  int angle(std::size_t i, std::size_t j) const { return omega_[i][j]; }
  int dot(std::size_t i, std::size_t j) const { return omega_[i][j] + omega_[j][i]; }

  mpq_class dot(const Weight& a, const Weight& b) const;
  mpq_class skew(const Weight& a, const Weight& b) const;

  // Half of i.i, the exponent d with v_i = v^d.
  int half_norm(std::size_t i) const;

  bool in_weight_lattice(const Weight& w) const;
  bool is_dominant(const Weight& w) const;
  // Coordinates 2(w.a_i)/(a_i.a_i) and back.
  std::vector<mpq_class> to_fundamental(const Weight& w) const;
  Weight from_fundamental(const std::vector<mpq_class>& c) const;

  const std::vector<RootVec>& positive_roots() const;
  Weight rho() const;
  Weight reflect(std::size_t i, const Weight& w) const;
  RootVec reflect(std::size_t i, const RootVec& a) const;
  Weight dominant_conjugate(const Weight& w) const;

  WeylGroup weyl_group(std::size_t bound = 100000) const;

  // dim L(lambda)_mu for every weight mu of L(lambda) (Freudenthal).
  std::map<Weight, int> weight_multiplicities(const Weight& lambda) const;
  // Product formula; independent check on the multiplicities.
  mpq_class weyl_dimension(const Weight& lambda) const;

  // Integer basis of {eta in Q : <i,eta> = <eta,i> for all i}.
  std::vector<RootVec> antisym_kernel() const;
  // Lift of eta with matching parities and nu/2 in the weight lattice.
  std::optional<RootVec> parity_lift(const RootVec& eta) const;

 private:
  std::vector<std::vector<int>> omega_;
  std::string name_;
  bool t_free_ = false;
  bool finite_ = false;
  std::vector<RootVec> positive_roots_;
};

mpq_class apply(const std::vector<std::vector<int>>& m, const Weight& w, std::size_t row);
Weight apply(const std::vector<std::vector<int>>& m, const Weight& w);
RootVec apply(const std::vector<std::vector<int>>& m, const RootVec& a);

}  // namespace uvt
