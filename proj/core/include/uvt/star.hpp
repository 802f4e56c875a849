#pragma once

#include <string>
#include <vector>

#include "uvt/algebra.hpp"

namespace uvt {

// One defining relation rewritten with the twisted product.
struct StarRelation {
  std::string name;
  // The relation holds with the one-parameter structure constants.
  bool one_parameter = false;
  // t-exponents left in the structure constants (empty when there are none).
  std::vector<int> residual_t;
};

// K-conjugation, K-K commutation, E*F - F*E and both Serre relations for
// every pair of indices, with * taken under `sign`.
std::vector<StarRelation> star_relations(const Algebra& alg, StarSign sign);

}  // namespace uvt
