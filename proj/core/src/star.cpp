#include "uvt/star.hpp"

#include "uvt/quantum.hpp"

namespace uvt {

namespace {

UElement star_chain(const Algebra& alg, const std::vector<UElement>& xs, StarSign sign) {
  UElement acc = alg.one();
  for (const auto& x : xs) acc = alg.star_multiply(acc, x, sign);
  return acc;
}

std::string idx(int i) { return std::to_string(i + 1); }

}  // namespace

std::vector<StarRelation> star_relations(const Algebra& alg, StarSign sign) {
  const CartanDatum& d = alg.datum();
  const int n = static_cast<int>(alg.rank());
  std::vector<StarRelation> out;

  // K_i * X_j * K_i^{-1} = c X_j with c = v^{+-i.j}.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      struct Case {
        std::string name;
        UElement k, kinv, x;
        int v_exp;
      };
      const int ij = d.dot(i, j);
      const std::vector<Case> cases{
          {"K" + idx(i) + "*E" + idx(j) + "*K" + idx(i) + "^-1", alg.K(i), alg.K(i, -1), alg.E(j), ij},
          {"K" + idx(i) + "'*E" + idx(j) + "*K" + idx(i) + "'^-1", alg.Kp(i), alg.Kp(i, -1), alg.E(j), -ij},
          {"K" + idx(i) + "*F" + idx(j) + "*K" + idx(i) + "^-1", alg.K(i), alg.K(i, -1), alg.F(j), -ij},
          {"K" + idx(i) + "'*F" + idx(j) + "*K" + idx(i) + "'^-1", alg.Kp(i), alg.Kp(i, -1), alg.F(j), ij},
      };
      for (const auto& c : cases) {
        const UElement lhs = star_chain(alg, {c.k, c.x, c.kinv}, sign);
        StarRelation r{c.name, false, {}};
        if (lhs.size() == 1) {
          const auto& [m, coef] = *lhs.terms().begin();
          if (c.x.terms().begin()->first == m && coef.num().size() == 1 && coef.den().is_one()) {
            const LaurentTerm& lt = coef.num().terms().front();
            if (lt.exp.t != 0) r.residual_t.push_back(lt.exp.t);
            r.one_parameter = lt.coeff == 1 && lt.exp.v == c.v_exp && lt.exp.t == 0;
          }
        }
        out.push_back(std::move(r));
      }
    }
  }

  // Cartan generators commute.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const UElement a = alg.star_multiply(alg.K(i), alg.Kp(j), sign) - alg.star_multiply(alg.Kp(j), alg.K(i), sign);
      const UElement b = alg.star_multiply(alg.K(i), alg.K(j), sign) - alg.star_multiply(alg.K(j), alg.K(i), sign);
      out.push_back({"K" + idx(i) + "*K" + idx(j) + "' = K" + idx(j) + "'*K" + idx(i), a.is_zero(), {}});
      out.push_back({"K" + idx(i) + "*K" + idx(j) + " = K" + idx(j) + "*K" + idx(i), b.is_zero(), {}});
    }
  }

  // E_i * F_j - F_j * E_i = delta_ij (K_i - K'_i)/(v_i - v_i^-1).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      UElement rhs;
      if (i == j) {
        const int h = d.half_norm(i);
        const Scalar q = (Scalar::monomial(h, 0) - Scalar::monomial(-h, 0)).inverse();
        rhs = q * (alg.K(i) - alg.Kp(i));
      }
      const UElement lhs = alg.star_multiply(alg.E(i), alg.F(j), sign) - alg.star_multiply(alg.F(j), alg.E(i), sign);
      out.push_back({"E" + idx(i) + "*F" + idx(j) + " - F" + idx(j) + "*E" + idx(i), lhs == rhs, {}});
    }
  }

  // sum_p (-1)^p X_i^(p) * X_j * X_i^(m-p) = 0 with one-parameter divided powers.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int h = d.half_norm(i);
      const int m = 1 - 2 * d.dot(i, j) / d.dot(i, i);
      for (bool upper : {true, false}) {
        const UElement xi = upper ? alg.E(i) : alg.F(i);
        const UElement xj = upper ? alg.E(j) : alg.F(j);
        UElement s;
        for (int p = 0; p <= m; ++p) {
          std::vector<UElement> word(p, xi);
          word.push_back(xj);
          word.insert(word.end(), m - p, xi);
          const Scalar c = Scalar(p % 2 == 0 ? 1 : -1) /
                           (quantum_factorial(p, h, false) * quantum_factorial(m - p, h, false));
          s += c * star_chain(alg, word, sign);
        }
        std::vector<int> residual;
        if (!s.is_zero()) {
          for (const auto& [mono, c] : s.terms()) {
            for (const LaurentTerm& lt : c.num().terms()) {
              if (lt.exp.t != 0) residual.push_back(lt.exp.t);
            }
          }
        }
        out.push_back({std::string("Serre ") + (upper ? "E" : "F") + idx(i) + "," + idx(j), s.is_zero(), residual});
      }
    }
  }
  return out;
}

}  // namespace uvt
