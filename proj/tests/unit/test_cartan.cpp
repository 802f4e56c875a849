#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "uvt/cartan.hpp"
#include "uvt/error.hpp"

using namespace uvt;

namespace {

Weight w(std::initializer_list<mpq_class> c) { return Weight(c); }

// Positive roots of A_n are a_i + ... + a_j, i <= j.
std::vector<RootVec> type_a_roots(std::size_t n) {
  std::vector<RootVec> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      RootVec r(n, 0);
      for (std::size_t k = i; k <= j; ++k) r[k] = 1;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("forms on the A2 preset") {
  const CartanDatum d = CartanDatum::preset("A2");
  const RootVec a1 = unit_vec(2, 0), a2 = unit_vec(2, 1);
  CHECK(d.angle(a1, a2) == -1);
  CHECK(d.angle(a2, a1) == 0);
  CHECK(d.dot(a1, a2) == d.angle(a1, a2) + d.angle(a2, a1));
  CHECK(d.dot(a1, a2) == -1);
  for (std::size_t i = 0; i < 2; ++i) CHECK(d.square(unit_vec(2, i), unit_vec(2, i)) == d.omega()[i][i]);
  CHECK(d.form(FormKind::angle, a1, a2) == -1);
  CHECK_THROWS_AS(d.angle(a1, RootVec{1, 0, 0}), ConstraintError);
}

TEST_CASE("form identities for every pair") {
  for (const char* type : {"A1", "A2", "A3", "A4"}) {
    const CartanDatum d = CartanDatum::preset(type);
    const std::size_t n = d.rank();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const RootVec a = unit_vec(n, i), b = unit_vec(n, j);
        CHECK(d.dot(a, b) == d.dot(b, a));
        CHECK(d.square(a, b) - d.square(b, a) == d.angle(b, a) - d.angle(a, b));
      }
    }
  }
}

TEST_CASE("axioms on Omega are enforced") {
  CHECK_THROWS_AS(CartanDatum({{1, 1}, {0, 1}}), ConstraintError);
  CHECK_THROWS_AS(CartanDatum({{2, 0}, {0, 2}}), ConstraintError);
  CHECK_THROWS_AS(CartanDatum(std::vector<std::vector<int>>{{0}}), ConstraintError);
  CHECK_NOTHROW(CartanDatum({{1, 0}, {-1, 1}}));
  CHECK_FALSE(CartanDatum({{2, -1}, {-1, 1}}).symmetric_type());
}

TEST_CASE("rho") {
  CHECK(CartanDatum::preset("A1").rho() == w({mpq_class(1, 2)}));
  const CartanDatum a1 = CartanDatum::preset("A1");
  CHECK(2 * a1.dot(a1.rho(), to_weight(RootVec{1})) == 2);
  CHECK(CartanDatum::preset("A2").rho() == w({1, 1}));
  const CartanDatum a3 = CartanDatum::preset("A3");
  Weight sum(3, 0);
  for (const auto& r : type_a_roots(3)) {
    for (std::size_t k = 0; k < 3; ++k) sum[k] += r[k];
  }
  for (auto& c : sum) c /= 2;
  CHECK(a3.rho() == sum);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a3.dot(a3.rho(), to_weight(unit_vec(3, i))) == 1);
}

TEST_CASE("positive roots match the type A closed form") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const CartanDatum d = CartanDatum::preset("A" + std::to_string(n));
    const auto& roots = d.positive_roots();
    const std::set<RootVec> got(roots.begin(), roots.end());
    const auto expected = type_a_roots(n);
    CHECK(got == std::set<RootVec>(expected.begin(), expected.end()));
  }
}

TEST_CASE("Weyl group orders") {
  CHECK(CartanDatum::preset("A1").weyl_group().order() == 2);
  CHECK(CartanDatum::preset("A2").weyl_group().order() == 6);
  CHECK(CartanDatum::preset("A3").weyl_group().order() == 24);
  CHECK_THROWS_AS(CartanDatum::preset("A3").weyl_group(10), ConstraintError);
}

TEST_CASE("reflections are involutions and preserve the dot form") {
  const CartanDatum d = CartanDatum::preset("A3");
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-4, 4);
  const WeylGroup W = d.weyl_group();
  for (int k = 0; k < 30; ++k) {
    const Weight a = {mpq_class(c(rng)) / 2, mpq_class(c(rng)), mpq_class(c(rng)) / 2};
    const Weight b = {mpq_class(c(rng)), mpq_class(c(rng)) / 2, mpq_class(c(rng))};
    for (std::size_t i = 0; i < 3; ++i) CHECK(d.reflect(i, d.reflect(i, a)) == a);
    const auto& s = W.elements[static_cast<std::size_t>(k) % W.order()];
    CHECK(d.dot(apply(s.matrix, a), apply(s.matrix, b)) == d.dot(a, b));
  }
}

TEST_CASE("weight multiplicities") {
  const CartanDatum a1 = CartanDatum::preset("A1");
  const auto m1 = a1.weight_multiplicities(w({1}));
  CHECK(m1.size() == 3);
  CHECK(m1.at(w({1})) == 1);
  CHECK(m1.at(w({0})) == 1);
  CHECK(m1.at(w({-1})) == 1);

  const CartanDatum a2 = CartanDatum::preset("A2");
  const auto m2 = a2.weight_multiplicities(w({1, 1}));
  CHECK(m2.at(w({0, 0})) == 2);
  int total = 0;
  for (const auto& [mu, k] : m2) total += k;
  CHECK(total == 8);
  for (const auto& r : type_a_roots(2)) {
    CHECK(m2.at(to_weight(r)) == 1);
    CHECK(m2.at(to_weight(-r)) == 1);
  }
  CHECK_THROWS_AS(a2.weight_multiplicities(w({1, -1})), ConstraintError);
}

TEST_CASE("Freudenthal totals match the Weyl dimension formula and are W-invariant") {
  for (const char* type : {"A1", "A2", "A3"}) {
    const CartanDatum d = CartanDatum::preset(type);
    const std::size_t n = d.rank();
    const WeylGroup W = d.weyl_group();
    // Dominant weights with fundamental coordinates summing to at most 4.
    std::vector<std::vector<mpq_class>> coords{{}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::vector<mpq_class>> next;
      for (const auto& c : coords) {
        for (int a = 0; a <= 4; ++a) {
          auto e = c;
          e.push_back(a);
          next.push_back(e);
        }
      }
      coords = next;
    }
    for (const auto& c : coords) {
      mpq_class s = 0;
      for (const auto& x : c) s += x;
      if (s > 4) continue;
      const Weight lambda = d.from_fundamental(c);
      const auto m = d.weight_multiplicities(lambda);
      mpq_class total = 0;
      for (const auto& [mu, k] : m) total += k;
      CHECK(total == d.weyl_dimension(lambda));
      CHECK(m.at(lambda) == 1);
      for (const auto& s_el : W.elements) {
        for (const auto& [mu, k] : m) CHECK(m.at(apply(s_el.matrix, mu)) == k);
      }
    }
  }
}

TEST_CASE("antisymmetric kernel") {
  const auto k1 = CartanDatum::preset("A1").antisym_kernel();
  CHECK(k1 == std::vector<RootVec>{{1}});
  CHECK(CartanDatum::preset("A2").antisym_kernel().empty());
  const CartanDatum a3 = CartanDatum::preset("A3");
  const auto k3 = a3.antisym_kernel();
  CHECK(k3 == std::vector<RootVec>{{1, 0, 1}});
  // Brute force over a box: every solution is an integer multiple of a1 + a3.
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      for (int z = -3; z <= 3; ++z) {
        const RootVec eta{x, y, z};
        bool in_kernel = true;
        for (std::size_t i = 0; i < 3; ++i) in_kernel = in_kernel && a3.skew(unit_vec(3, i), eta) == 0;
        CHECK(in_kernel == (y == 0 && x == z));
      }
    }
  }
}

TEST_CASE("parity lift") {
  CHECK(CartanDatum::preset("A1").parity_lift({1}) == RootVec{1});
  CHECK(CartanDatum::preset("A3").parity_lift({1, 0, 1}) == RootVec{1, 2, 1});
  CHECK(CartanDatum::preset("A3").parity_lift({0, 0, 0}) == RootVec{0, 0, 0});
  const CartanDatum a3 = CartanDatum::preset("A3");
  const RootVec nu = *a3.parity_lift({1, 0, 1});
  Weight half = to_weight(nu);
  for (auto& c : half) c /= 2;
  CHECK(a3.in_weight_lattice(half));
}

TEST_CASE("fundamental coordinates round-trip") {
  const CartanDatum d = CartanDatum::preset("A3");
  const Weight lambda = w({mpq_class(1, 2), 1, mpq_class(1, 2)});
  CHECK(d.to_fundamental(lambda) == std::vector<mpq_class>{0, 1, 0});
  CHECK(d.from_fundamental({0, 1, 0}) == lambda);
  CHECK(d.is_dominant(lambda));
  CHECK_FALSE(d.is_dominant(w({1, 0, 0})));
}

TEST_CASE("rendering of root vectors") {
  CHECK(render_rootvec({1, 0, 1}) == "a1+a3");
  CHECK(render_rootvec({0, 2}) == "2*a2");
  CHECK(render_rootvec({0, 0}) == "0");
  CHECK(render_rootvec({-1, 1}) == "-a1+a2");
}
