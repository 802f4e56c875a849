#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uvt/error.hpp"
#include "uvt/module.hpp"

using namespace uvt;

namespace {

const Scalar v = Scalar::v();
const Scalar t = Scalar::t();
const Scalar vi = Scalar::monomial(-1, 0);

ScalarMatrix mul(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t n = a.size();
  ScalarMatrix c(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

ScalarMatrix add(ScalarMatrix a, const ScalarMatrix& b, const Scalar& s = Scalar(1)) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += s * b[i][j];
  }
  return a;
}

ScalarMatrix scaled(const Scalar& s, ScalarMatrix a) {
  for (auto& row : a) {
    for (auto& x : row) x = s * x;
  }
  return a;
}

ScalarMatrix identity(std::size_t n) {
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool is_zero(const ScalarMatrix& m) {
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

bool is_zero(const Vector& x) {
  for (const auto& c : x) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Weight fundamental(const CartanDatum& d, std::vector<int> c) {
  std::vector<mpq_class> q(c.begin(), c.end());
  return d.from_fundamental(q);
}

// <a,b> on rational weights, straight from Omega.
mpq_class angle(const CartanDatum& d, const Weight& a, const Weight& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (std::size_t j = 0; j < d.rank(); ++j) s += a[i] * b[j] * d.omega()[i][j];
  }
  return s;
}

mpq_class dotq(const CartanDatum& d, const Weight& a, const Weight& b) { return angle(d, a, b) + angle(d, b, a); }

int as_int(const mpq_class& q) {
  REQUIRE(q.get_den() == 1);
  return static_cast<int>(q.get_num().get_si());
}

// Product of generator matrices along a word, left to right.
ScalarMatrix word_matrix(const WeightModule& m, const Word& w, bool upper) {
  ScalarMatrix out = identity(m.dim());
  for (int a : w) out = mul(out, upper ? m.E(a) : m.F(a));
  return out;
}

// R1-R4 for the stored generator matrices.
void check_relations(const WeightModule& m) {
  const auto& d = m.algebra().datum();
  const FreeAlgebra& f = m.algebra().free();
  const std::size_t n = d.rank();
  const std::size_t N = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const int ii = static_cast<int>(i);
    CHECK(mul(m.K(ii), m.K(ii, -1)) == identity(N));
    CHECK(mul(m.Kp(ii), m.Kp(ii, -1)) == identity(N));
    for (std::size_t j = 0; j < n; ++j) {
      const int jj = static_cast<int>(j);
      CHECK(mul(m.K(ii), m.Kp(jj)) == mul(m.Kp(jj), m.K(ii)));
      CHECK(mul(m.K(ii), m.K(jj)) == mul(m.K(jj), m.K(ii)));
      const int dij = d.omega()[i][j] + d.omega()[j][i];
      const int te = d.omega()[j][i] - d.omega()[i][j];
      const Scalar ce = d.vt(dij, te);
      const Scalar cpe = d.vt(-dij, te);
      CHECK(mul(mul(m.K(ii), m.E(jj)), m.K(ii, -1)) == scaled(ce, m.E(jj)));
      CHECK(mul(mul(m.Kp(ii), m.E(jj)), m.Kp(ii, -1)) == scaled(cpe, m.E(jj)));
      CHECK(mul(mul(m.K(ii), m.F(jj)), m.K(ii, -1)) == scaled(ce.inverse(), m.F(jj)));
      CHECK(mul(mul(m.Kp(ii), m.F(jj)), m.Kp(ii, -1)) == scaled(cpe.inverse(), m.F(jj)));
      ScalarMatrix comm = add(mul(m.E(ii), m.F(jj)), mul(m.F(jj), m.E(ii)), Scalar(-1));
      if (i == j) {
        const Scalar den = (v - vi).inverse();
        CHECK(comm == scaled(den, add(m.K(ii), m.Kp(ii), Scalar(-1))));
      } else {
        CHECK(is_zero(comm));
        // Serre: theta words to E words in order, F words reversed.
        ScalarMatrix se(N, std::vector<Scalar>(N)), sf(N, std::vector<Scalar>(N));
        for (const auto& [w, c] : f.serre_element(ii, jj).terms()) {
          se = add(se, word_matrix(m, w, true), c);
          const Word rev(w.rbegin(), w.rend());
          sf = add(sf, word_matrix(m, rev, false), c);
        }
        CHECK(is_zero(se));
        CHECK(is_zero(sf));
      }
    }
  }
}

std::vector<int> dims_by_space(const WeightModule& m) {
  std::vector<int> out;
  for (const auto& s : m.spaces()) out.push_back(static_cast<int>(s.dim));
  return out;
}

}  // namespace

TEST_CASE("sl2 Verma truncation") {
  Algebra alg(CartanDatum::preset("A1"));
  const WeightModule m = verma_truncated(alg, Weight{1}, 3);
  CHECK(dims_by_space(m) == std::vector<int>{1, 1, 1, 1});
  CHECK(m.spaces()[3].weight == Weight{-2});
  CHECK(is_zero(m.apply_E(0, m.highest_vector())));
  CHECK(m.apply_K(0, 1, m.highest_vector())[0] == v * v);
  CHECK(verma_truncated(alg, Weight{1}, 0).dim() == 1);
  CHECK_THROWS_AS(verma_truncated(alg, Weight{1}, -1), ConstraintError);
}

TEST_CASE("Verma weight spaces follow the PBW count") {
  Algebra alg(CartanDatum::preset("A2"));
  const WeightModule m = verma_truncated(alg, Weight{1, 1}, 4);
  const std::map<RootVec, int> expected{{{0, 0}, 1}, {{1, 0}, 1}, {{1, 1}, 2}, {{2, 1}, 2}, {{2, 2}, 3}, {{3, 1}, 2}};
  for (const auto& [nu, dim] : expected) CHECK(m.spaces()[*m.space_index(nu)].dim == static_cast<std::size_t>(dim));
}

TEST_CASE("K eigenvalues on the highest weight vector") {
  for (const char* type : {"A2", "A3"}) {
    Algebra alg(CartanDatum::preset(type));
    const auto& d = alg.datum();
    const std::size_t n = d.rank();
    for (const RootVec& lam : {unit_vec(n, 0), unit_vec(n, 1), RootVec(n, 1)}) {
      const Weight l = to_weight(lam);
      const WeightModule m = verma_truncated(alg, l, 1);
      for (std::size_t i = 0; i < n; ++i) {
        const Weight ai = to_weight(unit_vec(n, i));
        const int ve = as_int(dotq(d, ai, l));
        const int te = as_int(angle(d, l, ai) - angle(d, ai, l));
        const Vector top = m.highest_vector();
        CHECK(m.apply_K(static_cast<int>(i), 1, top)[0] == v.pow(ve) * t.pow(te));
        CHECK(m.apply_Kp(static_cast<int>(i), 1, top)[0] == v.pow(-ve) * t.pow(te));
        CHECK(is_zero(m.apply_E(static_cast<int>(i), top)));
      }
    }
  }
}

TEST_CASE("matrix coefficients") {
  Algebra alg(CartanDatum::preset("A2"));
  const WeightModule m = verma_truncated(alg, Weight{1, 0}, 2);
  const Vector top = m.highest_vector();
  const Vector f_top = m.basis_vector(0);
  CHECK(matrix_coefficient(m, f_top, top, alg.K(0)) == v * v);
  CHECK(matrix_coefficient(m, f_top, top, alg.K(1)) == vi * t.pow(-1));
  CHECK(matrix_coefficient(m, f_top, top, alg.one()) == Scalar(1));
  CHECK(matrix_coefficient(m, f_top, top, alg.F(0)).is_zero());
  const Vector x = m.basis_vector(1);
  const Vector g = m.basis_vector(1);
  CHECK(matrix_coefficient(m, g, x, alg.one()) == Scalar(1));
}

TEST_CASE("singular vectors in sl2 Vermas") {
  Algebra alg(CartanDatum::preset("A1"));
  for (int mm = 0; mm <= 4; ++mm) {
    const Weight l{mpq_class(mm) / 2};
    const WeightModule m = verma_truncated(alg, l, mm + 3);
    const auto sing = singular_vectors(m);
    REQUIRE(sing.size() == 1);
    // Proportional to F^{m+1} v_lambda.
    Vector x = m.highest_vector();
    for (int k = 0; k <= mm; ++k) x = m.apply_F(0, x);
    const std::size_t pos = m.spaces()[*m.space_index(RootVec{mm + 1})].offset;
    CHECK(!x[pos].is_zero());
    CHECK(!sing[0][pos].is_zero());
    for (std::size_t k = 0; k < m.dim(); ++k) CHECK(sing[0][k] * x[pos] == x[k] * sing[0][pos]);
  }
  CHECK(singular_vectors(verma_truncated(alg, Weight{-1}, 5)).empty());
}

TEST_CASE("singular vector theorem") {
  Algebra a1(CartanDatum::preset("A1"));
  for (int mm = 0; mm <= 4; ++mm) {
    const WeightModule m = verma_truncated(a1, Weight{mpq_class(mm) / 2}, mm + 1);
    Vector x = m.highest_vector();
    for (int k = 0; k <= mm; ++k) x = m.apply_F(0, x);
    CHECK_FALSE(is_zero(x));
    CHECK(is_zero(m.apply_E(0, x)));
  }
  Algebra a2(CartanDatum::preset("A2"));
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      const Weight l = fundamental(a2.datum(), {a, b});
      const int depth = std::max(a, b) + 1;
      const WeightModule m = verma_truncated(a2, l, depth);
      for (int i = 0; i < 2; ++i) {
        const int nn = (i == 0 ? a : b) + 1;
        Vector x = m.highest_vector();
        for (int k = 0; k < nn; ++k) x = m.apply_F(i, x);
        CHECK_FALSE(is_zero(x));
        for (int j = 0; j < 2; ++j) CHECK(is_zero(m.apply_E(j, x)));
        // One step earlier the vector is not singular.
        Vector y = m.highest_vector();
        for (int k = 0; k + 1 < nn; ++k) y = m.apply_F(i, y);
        if (nn > 1) CHECK_FALSE(is_zero(m.apply_E(i, y)));
      }
    }
  }
}

TEST_CASE("simple modules") {
  Algebra a1(CartanDatum::preset("A1"));
  const WeightModule l1 = simple_module(a1, Weight{1});
  CHECK(dims_by_space(l1) == std::vector<int>{1, 1, 1});
  CHECK(l1.spaces()[1].weight == Weight{0});
  CHECK_THROWS_AS(simple_module(a1, Weight{-1}), ConstraintError);

  Algebra a2(CartanDatum::preset("A2"));
  const WeightModule adj = simple_module(a2, Weight{1, 1});
  CHECK(adj.dim() == 8);
  CHECK(adj.spaces()[*adj.space_index(RootVec{1, 1})].dim == 2);
  CHECK(adj.spaces()[0].dim == 1);
}

TEST_CASE("simple module dimensions match Freudenthal") {
  std::vector<std::pair<const char*, std::vector<int>>> cases;
  for (int a = 0; a <= 4; ++a) cases.push_back({"A1", {a}});
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) cases.push_back({"A2", {a, b}});
  }
  for (const std::vector<int>& c : {std::vector<int>{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 2, 0}, {1, 1, 1}}) cases.push_back({"A3", c});
  for (const auto& [type, c] : cases) {
    Algebra alg(CartanDatum::preset(type));
    const Weight l = fundamental(alg.datum(), c);
    const WeightModule m = simple_module(alg, l);
    const auto mult = alg.datum().weight_multiplicities(l);
    std::size_t total = 0;
    for (const auto& [mu, k] : mult) {
      RootVec depth;
      for (std::size_t i = 0; i < l.size(); ++i) depth.push_back(as_int(l[i] - mu[i]));
      const auto s = m.space_index(depth);
      REQUIRE(s.has_value());
      CHECK(m.spaces()[*s].dim == static_cast<std::size_t>(k));
      total += static_cast<std::size_t>(k);
    }
    CHECK(m.dim() == total);
    CHECK(m.spaces().size() == mult.size());
  }
}

TEST_CASE("layered and Verma-quotient constructions agree") {
  std::vector<std::pair<const char*, std::vector<int>>> cases{{"A1", {0}}, {"A1", {3}}, {"A2", {1, 1}}, {"A2", {3, 0}}, {"A2", {0, 2}}};
  std::mt19937 rng(21);
  for (const auto& [type, c] : cases) {
    Algebra alg(CartanDatum::preset(type));
    const Weight l = fundamental(alg.datum(), c);
    const WeightModule a = simple_module(alg, l);
    const WeightModule b = simple_module_from_verma(alg, l);
    REQUIRE(a.spaces().size() == b.spaces().size());
    for (const auto& s : a.spaces()) CHECK(b.spaces()[*b.space_index(s.depth)].dim == s.dim);
    check_relations(b);
    // Traces do not depend on the basis.
    if (!to_rootvec(l)) continue;
    for (int k = 0; k < 6; ++k) {
      UElement u;
      for (int r = 0; r < 2; ++r) {
        const Word w = test::random_word(rng, alg.rank(), 2);
        Word rev(w.rbegin(), w.rend());
        u += test::small_scalar(rng) * alg.multiply(alg.F_word(rev), alg.E_word(w));
      }
      CHECK(quantum_trace(a, u) == quantum_trace(b, u));
    }
  }
}

TEST_CASE("defining relations hold on modules") {
  Algebra a1(CartanDatum::preset("A1"));
  for (int mm = 0; mm <= 6; ++mm) check_relations(simple_module(a1, Weight{mpq_class(mm) / 2}));
  Algebra a2(CartanDatum::preset("A2"));
  check_relations(simple_module(a2, Weight{1, 1}));
  check_relations(simple_module(a2, fundamental(a2.datum(), {1, 0})));
  check_relations(simple_module(a2, fundamental(a2.datum(), {2, 0})));
  check_relations(simple_module(a2, fundamental(a2.datum(), {0, 2})));
  Algebra a3(CartanDatum::preset("A3"));
  check_relations(simple_module(a3, fundamental(a3.datum(), {1, 0, 1})));

  // Hard-coded Serre combination in A2.
  const WeightModule adj = simple_module(a2, Weight{1, 1});
  const ScalarMatrix e1 = adj.E(0), e2 = adj.E(1);
  const ScalarMatrix s = add(add(mul(mul(e2, e1), e1), mul(mul(e1, e2), e1), -(t.pow(-1) * (v + vi))),
                             mul(mul(e1, e1), e2), t.pow(-2));
  CHECK(is_zero(s));
}

TEST_CASE("module action is a representation") {
  Algebra a2(CartanDatum::preset("A2"));
  const WeightModule m = simple_module(a2, Weight{1, 1});
  std::mt19937 rng(12);
  for (int k = 0; k < 12; ++k) {
    const UElement a = test::random_element(a2, rng, 2);
    const UElement b = test::random_element(a2, rng, 2);
    CHECK(m.matrix(a2.multiply(a, b)) == mul(m.matrix(a), m.matrix(b)));
  }
  CHECK(m.matrix(a2.E(0)) == m.E(0));
  CHECK(m.matrix(a2.Kp(1, -2)) == m.Kp(1, -2));
}

TEST_CASE("fractional t-powers are refused in general actions") {
  Algebra a2(CartanDatum::preset("A2"));
  const WeightModule m = simple_module(a2, fundamental(a2.datum(), {1, 0}));
  CHECK(m.dim() == 3);
  CHECK_THROWS_AS(m.matrix(a2.K(0)), ConstraintError);
  CHECK(m.matrix(a2.F(0)) == m.F(0));
}

TEST_CASE("Theta") {
  Algebra a1(CartanDatum::preset("A1"));
  const auto& d = a1.datum();
  const WeightModule l1 = simple_module(a1, Weight{1});
  const int e = as_int(2 * dotq(d, d.rho(), Weight{1}));
  CHECK(theta(l1) == std::vector<Scalar>{v.pow(-e), Scalar(1), v.pow(e)});
  for (const auto& c : theta(l1)) CHECK_FALSE(c.is_zero());
}

TEST_CASE("Theta conjugation matches the square of the antipode") {
  for (const auto& [type, lam] : std::vector<std::pair<const char*, Weight>>{{"A1", {1}}, {"A2", {1, 1}}}) {
    Algebra alg(CartanDatum::preset(type));
    const WeightModule m = simple_module(alg, lam);
    const auto th = theta(m);
    ScalarMatrix big(m.dim(), std::vector<Scalar>(m.dim()));
    for (std::size_t k = 0; k < m.dim(); ++k) big[k][k] = th[k];
    for (int i = 0; i < static_cast<int>(alg.rank()); ++i) {
      for (const UElement& u : {alg.E(i), alg.F(i), alg.K(i), alg.Kp(i), alg.K(i, -1), alg.Kp(i, -1)}) {
        const UElement s2 = alg.antipode(alg.antipode(u));
        CHECK(mul(big, m.matrix(u)) == mul(m.matrix(s2), big));
      }
    }
  }
}

TEST_CASE("quantum trace") {
  for (const auto& [type, c] : std::vector<std::pair<const char*, std::vector<int>>>{
           {"A1", {2}}, {"A2", {1, 1}}, {"A2", {3, 0}}}) {
    Algebra alg(CartanDatum::preset(type));
    const auto& d = alg.datum();
    const std::size_t n = d.rank();
    const Weight l = fundamental(d, c);
    const WeightModule m = simple_module(alg, l);
    const auto mult = d.weight_multiplicities(l);
    Scalar expected;
    for (const auto& [mu, k] : mult) expected += Scalar(k) * v.pow(-as_int(2 * dotq(d, d.rho(), mu)));
    CHECK(quantum_trace(m, alg.one()) == expected);
    for (int i = 0; i < static_cast<int>(n); ++i) {
      CHECK(quantum_trace(m, alg.E(i)).is_zero());
      CHECK(quantum_trace(m, alg.F(i)).is_zero());
    }
    // f(K'_eta K_phi) against v^{mu.(phi-eta)} t^{<mu,phi+eta> - <phi+eta,mu>}.
    for (const RootVec& eta : {unit_vec(n, 0), RootVec(n, 1), zero_vec(n)}) {
      for (const RootVec& phi : {unit_vec(n, n - 1), zero_vec(n), -unit_vec(n, 0)}) {
        const Weight we = to_weight(eta), wp = to_weight(phi);
        Weight sum(n), diff(n);
        for (std::size_t i = 0; i < n; ++i) {
          sum[i] = we[i] + wp[i];
          diff[i] = wp[i] - we[i];
        }
        Scalar ex;
        for (const auto& [mu, k] : mult) {
          const int ve = as_int(dotq(d, mu, diff));
          const int te = as_int(angle(d, mu, sum) - angle(d, sum, mu));
          ex += Scalar(k) * v.pow(-as_int(2 * dotq(d, d.rho(), mu))) * v.pow(ve) * t.pow(te);
        }
        CHECK(quantum_trace(m, alg.cartan(phi, eta)) == ex);
      }
    }
  }
}
