#pragma once

#include <random>
#include <vector>

#include "uvt/algebra.hpp"

namespace uvt::test {

inline Scalar random_laurent(std::mt19937& rng, int terms = 3) {
  std::uniform_int_distribution<int> e(-3, 3);
  std::uniform_int_distribution<int> c(-5, 5);
  LaurentPoly p;
  for (int k = 0; k < terms; ++k) p += LaurentPoly::monomial(e(rng), e(rng), c(rng));
  return p;
}

inline Scalar random_scalar(std::mt19937& rng) {
  Scalar den;
  do {
    den = random_laurent(rng, 2);
  } while (den.is_zero());
  return random_laurent(rng) / den;
}

inline Scalar small_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-2, 2);
  std::uniform_int_distribution<int> c(1, 3);
  const int sign = rng() % 2 ? 1 : -1;
  return Scalar::monomial(e(rng), e(rng), sign * c(rng));
}

inline Word random_word(std::mt19937& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<int> g(0, static_cast<int>(rank) - 1);
  Word w;
  for (std::size_t k = 0; k < len; ++k) w.push_back(g(rng));
  return w;
}

// Product of generators with a small Cartan part, total letter count <= max_letters.
inline UElement random_monomial(const Algebra& alg, std::mt19937& rng, int max_letters) {
  const std::size_t n = alg.rank();
  std::uniform_int_distribution<int> len(0, max_letters);
  int f_len = len(rng);
  int e_len = len(rng);
  while (f_len + e_len > max_letters) (f_len > e_len ? f_len : e_len)--;
  std::uniform_int_distribution<int> kexp(-1, 1);
  RootVec k(n), kp(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = kexp(rng);
    kp[i] = kexp(rng);
  }
  UElement x = alg.F_word(random_word(rng, n, f_len));
  x = alg.multiply(x, alg.cartan(k, kp));
  return alg.multiply(x, alg.E_word(random_word(rng, n, e_len)));
}

inline UElement random_element(const Algebra& alg, std::mt19937& rng, int max_letters, int terms = 2) {
  UElement x;
  for (int k = 0; k < terms; ++k) x += small_scalar(rng) * random_monomial(alg, rng, max_letters);
  return x;
}

inline std::vector<UElement> generators(const Algebra& alg) {
  std::vector<UElement> g;
  for (std::size_t i = 0; i < alg.rank(); ++i) {
    const int ii = static_cast<int>(i);
    g.push_back(alg.E(ii));
    g.push_back(alg.F(ii));
    g.push_back(alg.K(ii));
    g.push_back(alg.Kp(ii));
    g.push_back(alg.K(ii, -1));
    g.push_back(alg.Kp(ii, -1));
  }
  return g;
}

}  // namespace uvt::test
