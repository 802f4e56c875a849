#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "uvt/error.hpp"
#include "uvt/freealg.hpp"

using namespace uvt;

namespace {

const Scalar v = Scalar::v();
const Scalar t = Scalar::t();
const Scalar vi = Scalar::monomial(-1, 0);

FreeElement th(std::initializer_list<int> w) { return FreeElement(Word(w)); }

// (theta_i, theta_i) in symmetric type.
Scalar base() { return (Scalar(1) - Scalar::monomial(-2, 0)).inverse(); }

Word random_word_of(std::mt19937& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<int> g(0, static_cast<int>(rank) - 1);
  Word w;
  for (std::size_t k = 0; k < len; ++k) w.push_back(g(rng));
  return w;
}

// Number of ways to write nu as a sum of type A positive roots.
int kostant(const RootVec& nu) {
  const std::size_t n = nu.size();
  std::vector<RootVec> roots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      RootVec r(n, 0);
      for (std::size_t k = i; k <= j; ++k) r[k] = 1;
      roots.push_back(r);
    }
  }
  std::function<int(std::size_t, RootVec)> go = [&](std::size_t idx, RootVec rem) -> int {
    if (idx == roots.size()) return is_zero(rem) ? 1 : 0;
    int total = 0;
    while (is_nonnegative(rem)) {
      total += go(idx + 1, rem);
      rem = rem - roots[idx];
    }
    return total;
  };
  return go(0, nu);
}

std::vector<RootVec> degrees_up_to(std::size_t n, int max_tr) {
  std::vector<RootVec> out{RootVec(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RootVec> next;
    for (const auto& d : out) {
      for (int a = 0; a <= max_tr; ++a) {
        auto e = d;
        e[i] = a;
        if (tr(e) <= max_tr) next.push_back(e);
      }
    }
    out = next;
  }
  return out;
}

}  // namespace

TEST_CASE("free multiplication") {
  CHECK(th({0}) * th({1}) == th({0, 1}));
  const FreeElement x = th({1, 0}) + Scalar(3) * th({0});
  CHECK(FreeElement::one() * x == x);
  CHECK(x * FreeElement::one() == x);
  CHECK((th({0}) + th({1})) * th({0}) == th({0, 0}) + th({1, 0}));
  CHECK((th({0, 1}) + th({1})).homogeneous_part({1, 1}) + (th({0, 1}) + th({1})).homogeneous_part({0, 1}) ==
        th({0, 1}) + th({1}));
  CHECK(th({0, 1}).to_string() == "th1*th2");
}

TEST_CASE("twisted tensor product") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  TensorElement a, b;
  a.add({}, {0}, 1);
  b.add({0}, {}, 1);
  TensorElement expected;
  expected.add({0}, {0}, v * v);
  CHECK(f.twisted_multiply(a, b) == expected);

  TensorElement x, y;
  x.add({1}, {}, 1);
  y.add({0}, {}, 1);
  TensorElement xy;
  xy.add({1, 0}, {}, 1);
  CHECK(f.twisted_multiply(x, y) == xy);

  // Twist for |x2| = a1+a2 against |y1| = a1 is the product of the two single twists.
  const auto coeff = [&](const Word& x2, const Word& y1) {
    TensorElement p, q;
    p.add({}, x2, 1);
    q.add(y1, {}, 1);
    return f.twisted_multiply(p, q).terms.begin()->second;
  };
  CHECK(coeff({0, 1}, {0}) == coeff({0}, {0}) * coeff({1}, {0}));
  CHECK(coeff({0}, {0, 1}) == coeff({0}, {0}) * coeff({0}, {1}));
  // i = a1, j = a2: v^{i.j} t^{<i,j> - <j,i>} with i.j = -1, <1,2> = -1, <2,1> = 0.
  CHECK(coeff({1}, {0}) == vi * t.pow(-1));
}

TEST_CASE("coproduct r") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  TensorElement r1;
  r1.add({0}, {}, 1);
  r1.add({}, {0}, 1);
  CHECK(f.coproduct(th({0})) == r1);

  TensorElement r2;
  r2.add({0, 0}, {}, 1);
  r2.add({0}, {0}, Scalar(1) + v * v);
  r2.add({}, {0, 0}, 1);
  CHECK(f.coproduct(th({0, 0})) == r2);

  TensorElement unit;
  unit.add({}, {}, 1);
  CHECK(f.coproduct(FreeElement::one()) == unit);

  std::mt19937 rng(17);
  for (int k = 0; k < 20; ++k) {
    const FreeElement a(random_word_of(rng, 2, 2));
    const FreeElement b(random_word_of(rng, 2, 2));
    CHECK(f.coproduct(a * b) == f.twisted_multiply(f.coproduct(a), f.coproduct(b)));
  }
}

TEST_CASE("bilinear form values") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  CHECK(f.pairing(Word{}, Word{}) == Scalar(1));
  CHECK(f.pairing(Word{0}, Word{0}) == base());
  CHECK(f.pairing(Word{1}, Word{1}) == base());
  CHECK(f.pairing(Word{0}, Word{1}).is_zero());
  CHECK(f.pairing(Word{0, 0}, Word{0, 0}) == (Scalar(1) + v * v) * t * t * base() * base());
  CHECK(f.pairing(Word{0, 1}, Word{0, 0}).is_zero());
}

TEST_CASE("bilinear form is symmetric and matches the coproduct route") {
  for (const char* type : {"A1", "A2", "A3"}) {
    FreeAlgebra f(CartanDatum::preset(type));
    std::mt19937 rng(41);
    std::uniform_int_distribution<std::size_t> len(1, 5);
    for (int k = 0; k < 40; ++k) {
      const std::size_t l = len(rng);
      const Word a = random_word_of(rng, f.rank(), l);
      Word b = a;
      std::shuffle(b.begin(), b.end(), rng);
      CHECK(f.pairing(a, b) == f.pairing(b, a));
      // (x, th_j y) = (r(x), th_j (x) y)
      const Word tail(b.begin() + 1, b.end());
      const TensorElement rhs = TensorElement::pure(FreeElement(Word{b.front()}), FreeElement(tail));
      CHECK(f.pairing(a, b) == f.tensor_pairing(f.coproduct(FreeElement(a)), rhs));
      // (x, y' y'') with a random split point.
      const std::size_t cut = std::uniform_int_distribution<std::size_t>(0, l)(rng);
      const Word y1(b.begin(), b.begin() + static_cast<long>(cut));
      const Word y2(b.begin() + static_cast<long>(cut), b.end());
      CHECK(f.pairing(a, b) == f.tensor_pairing(f.coproduct(FreeElement(a)),
                                                TensorElement::pure(FreeElement(y1), FreeElement(y2))));
    }
  }
}

TEST_CASE("r_i and _ir") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  CHECK(f.r_map(Word{0}, 0, Side::right) == FreeElement::one());
  CHECK(f.r_map(Word{1}, 0, Side::right).is_zero());
  CHECK(f.r_map(FreeElement::one(), 0, Side::right).is_zero());
  CHECK(f.r_map(Word{0, 0}, 0, Side::right) == (Scalar(1) + v * v) * th({0}));
}

TEST_CASE("r_i matches the theta_i components of r") {
  for (const char* type : {"A2", "A3"}) {
    FreeAlgebra f(CartanDatum::preset(type));
    std::mt19937 rng(8);
    std::uniform_int_distribution<std::size_t> len(1, 5);
    for (int k = 0; k < 30; ++k) {
      const Word w = random_word_of(rng, f.rank(), len(rng));
      const TensorElement r = f.coproduct(FreeElement(w));
      for (int i = 0; i < static_cast<int>(f.rank()); ++i) {
        FreeElement right, left;
        for (const auto& [key, c] : r.terms) {
          if (key.second == Word{i}) right.add(key.first, c);
          if (key.first == Word{i}) left.add(key.second, c);
        }
        CHECK(f.r_map(w, i, Side::right) == right);
        CHECK(f.r_map(w, i, Side::left) == left);
      }
    }
  }
}

TEST_CASE("Serre elements") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  const Scalar two = t * (v + vi);
  const FreeElement expected = two.inverse() * th({1, 0, 0}) - t.pow(-2) * th({0, 1, 0}) +
                               t.pow(-2) * two.inverse() * th({0, 0, 1});
  CHECK(f.serre_element(0, 1) == expected);
  CHECK_THROWS_AS(f.serre_element(1, 1), ConstraintError);

  const Scalar two_v = v + vi;
  const FreeElement classical = two_v.inverse() * th({1, 0, 0}) - th({0, 1, 0}) + two_v.inverse() * th({0, 0, 1});
  CHECK(f.serre_element(0, 1).specialize_t_one() == classical);

  FreeAlgebra f3(CartanDatum::preset("A3"));
  const FreeElement orth = f3.serre_element(0, 2);
  CHECK(orth.terms().size() == 2);
  CHECK(orth.coefficient(Word{2, 0}) == Scalar(1));
}

TEST_CASE("Serre elements lie in the radical") {
  for (const char* type : {"A2", "A3"}) {
    FreeAlgebra f(CartanDatum::preset(type));
    const int n = static_cast<int>(f.rank());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const FreeElement s = f.serre_element(i, j);
        const RootVec deg = f.degree(s.terms().begin()->first);
        for (const auto& w : f.words_of_degree(deg)) CHECK(f.pairing(s, FreeElement(w)).is_zero());
      }
    }
  }
}

TEST_CASE("graded bases") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  const auto b11 = f.graded_basis({1, 1});
  CHECK(b11->words == std::vector<Word>{{0, 1}, {1, 0}});
  CHECK(b11->rank == 2);
  CHECK(b11->radical_dim == 0);
  const ScalarMatrix g = f.full_gram({1, 1});
  CHECK_FALSE((g[0][0] * g[1][1] - g[0][1] * g[1][0]).is_zero());

  const auto b21 = f.graded_basis({2, 1});
  CHECK(b21->words.size() == 3);
  CHECK(b21->rank == 2);
  CHECK(b21->radical_dim == 1);

  CHECK(f.graded_basis({1, 0})->rank == 1);
  CHECK(f.graded_basis({0, 1})->rank == 1);
}

TEST_CASE("graded ranks match the PBW count") {
  for (const auto& [type, max_tr] : std::vector<std::pair<const char*, int>>{{"A2", 5}, {"A3", 4}}) {
    FreeAlgebra f(CartanDatum::preset(type));
    for (const auto& nu : degrees_up_to(f.rank(), max_tr)) {
      const auto b = f.graded_basis(nu);
      CHECK(static_cast<int>(b->rank) == kostant(nu));
      CHECK(b->rank + b->radical_dim == b->words.size());
    }
  }
}

TEST_CASE("reduction modulo the radical is consistent with the form") {
  FreeAlgebra f(CartanDatum::preset("A2"));
  for (const RootVec& nu : {RootVec{2, 1}, RootVec{1, 2}, RootVec{2, 2}}) {
    const auto b = f.graded_basis(nu);
    for (const auto& w : b->words) {
      const auto c = f.reduce(w);
      FreeElement approx;
      for (std::size_t k = 0; k < c.size(); ++k) approx.add(b->basis[k], c[k]);
      for (const auto& u : b->words) CHECK(f.pairing(approx, FreeElement(u)) == f.pairing(w, u));
    }
  }
}
