#include "uvt/centre.hpp"

#include <algorithm>

#include "uvt/error.hpp"
#include "uvt/expr.hpp"
#include "uvt/linalg.hpp"

namespace uvt {

namespace {

int integral(const mpq_class& x, const char* what) {
  if (x.get_den() != 1) throw ConstraintError(std::string(what) + " is not an integer");
  return static_cast<int>(x.get_num().get_si());
}

Weight add_w(const Weight& a, const Weight& b) {
  Weight r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Weight neg_w(const Weight& a) {
  Weight r = a;
  for (auto& x : r) x = -x;
  return r;
}

Weight two_rho(const CartanDatum& d) {
  Weight r = d.rho();
  for (auto& x : r) x *= 2;
  return r;
}

std::vector<RootVec> degrees_up_to(std::size_t n, int max_tr) {
  std::vector<RootVec> out;
  RootVec cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[i] = x;
      self(self, i + 1, left - x);
    }
    cur[i] = 0;
  };
  rec(rec, 0, max_tr);
  std::sort(out.begin(), out.end(), [](const RootVec& a, const RootVec& b) {
    return tr(a) != tr(b) ? tr(a) < tr(b) : a < b;
  });
  return out;
}

std::vector<UElement> generators(const Algebra& alg, const std::vector<int>& J, bool with_cartan) {
  std::vector<UElement> g;
  for (int j : J) {
    g.push_back(alg.E(j));
    g.push_back(alg.F(j));
  }
  if (with_cartan) {
    for (std::size_t j = 0; j < alg.rank(); ++j) {
      g.push_back(alg.K(static_cast<int>(j)));
      g.push_back(alg.Kp(static_cast<int>(j)));
    }
  }
  return g;
}

std::vector<int> all_indices(std::size_t n) {
  std::vector<int> J(n);
  for (std::size_t i = 0; i < n; ++i) J[i] = static_cast<int>(i);
  return J;
}

bool central_by_routes(const Algebra& alg, const std::vector<UElement>& gens, const UElement& u) {
  const bool by_commutators = commutes_with(alg, u, gens);
  bool by_adjoint = true;
  for (const auto& g : gens) {
    if (!(alg.adjoint(g, u) == alg.counit(g) * u)) {
      by_adjoint = false;
      break;
    }
  }
  if (by_commutators != by_adjoint) {
    throw InvariantError("centrality: commutator and adjoint checks disagree on " + render(u));
  }
  return by_commutators;
}

// Coefficients c[a][j] of F_{f^nu_a} (Cartan) E_{e^mu_j} in the lift of psi.
ScalarMatrix lift_coefficients(const Pairing& p, const ScalarMatrix& psi, const RootVec& mu, const RootVec& nu) {
  const auto dm = p.dual_basis(mu);
  const auto dn = p.dual_basis(nu);
  const std::size_t nm = dm->e_words.size();
  const std::size_t nn = dn->e_words.size();
  if (psi.size() != nm || (nm > 0 && psi[0].size() != nn)) throw ConstraintError("functional table has the wrong shape");
  // m[j][i] = Psi(v^mu_j, u^nu_i)
  ScalarMatrix m(nm, std::vector<Scalar>(nn));
  for (std::size_t j = 0; j < nm; ++j) {
    for (std::size_t i = 0; i < nn; ++i) {
      Scalar s;
      for (std::size_t a = 0; a < nm; ++a) {
        if (!dm->dual[j][a].is_zero() && !psi[a][i].is_zero()) s += dm->dual[j][a] * psi[a][i];
      }
      m[j][i] = s;
    }
  }
  const Scalar shift = Scalar::monomial(-p.two_rho_dot(nu), 0);
  ScalarMatrix c(nn, std::vector<Scalar>(nm));
  for (std::size_t a = 0; a < nn; ++a) {
    for (std::size_t j = 0; j < nm; ++j) {
      Scalar s;
      for (std::size_t i = 0; i < nn; ++i) {
        if (!m[j][i].is_zero() && !dn->dual[i][a].is_zero()) s += m[j][i] * dn->dual[i][a];
      }
      if (!s.is_zero()) c[a][j] = s * shift;
    }
  }
  return c;
}

// z_lambda with Cartan exponents kept as weights: F_f K_k K'_kp E_e.
struct FormalTerm {
  Word f;
  Weight k;
  Weight kp;
  Word e;
  Scalar c;
};

std::vector<FormalTerm> trace_lift(const Pairing& p, const WeightModule& L) {
  const Algebra& alg = p.algebra();
  const CartanDatum& d = alg.datum();
  const std::size_t n = alg.rank();
  const Weight tr2 = two_rho(d);

  std::vector<FormalTerm> out;
  int max_depth = 0;
  for (const auto& s : L.spaces()) max_depth = std::max(max_depth, tr(s.depth));

  for (const RootVec& nu : degrees_up_to(n, max_depth)) {
    const auto db = p.dual_basis(nu);
    const std::size_t nb = db->e_words.size();
    if (nb == 0) continue;
    for (const auto& s : L.spaces()) {
      // L_mu with mu = lambda - depth, and mu + nu a weight
      if (!is_nonnegative(s.depth - nu)) continue;
      if (!L.space_index(s.depth - nu)) continue;
      const Weight& mu = s.weight;
      ScalarMatrix psi(nb, std::vector<Scalar>(nb));
      bool nonzero = false;
      for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
          const UElement m(Monomial{db->f_words[a], zero_vec(n), -nu, db->e_words[b]}, 1);
          Scalar acc;
          for (std::size_t k = s.offset; k < s.offset + s.dim; ++k) {
            const Vector y = L.act(m, L.basis_vector(k));
            acc += y[k];
          }
          psi[a][b] = acc;
          nonzero = nonzero || !acc.is_zero();
        }
      }
      if (!nonzero) continue;
      const ScalarMatrix c = lift_coefficients(p, psi, nu, nu);
      const Scalar theta = Scalar::monomial(-integral(d.dot(tr2, mu), "2 rho . mu"), 0);
      const Weight top = add_w(mu, to_weight(nu));
      for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t j = 0; j < nb; ++j) {
          if (c[a][j].is_zero()) continue;
          out.push_back({db->f_words[a], neg_w(top), mu, db->e_words[j], c[a][j] * theta});
        }
      }
    }
  }
  return out;
}

UElement materialise(const std::vector<FormalTerm>& terms, const Weight& shift) {
  UElement z;
  for (const auto& t : terms) {
    auto k = to_rootvec(add_w(t.k, shift));
    auto kp = to_rootvec(add_w(t.kp, shift));
    if (!k || !kp) throw ConstraintError("Cartan substitution leaves a non-integral exponent");
    z.add(Monomial{t.f, *k, *kp, t.e}, t.c);
  }
  return z;
}

bool in_antisym_kernel(const CartanDatum& d, const RootVec& eta) {
  for (std::size_t i = 0; i < d.rank(); ++i) {
    const RootVec a = unit_vec(d.rank(), i);
    if (d.angle(a, eta) != d.angle(eta, a)) return false;
  }
  return true;
}

// Star image of a one-parameter normal-form element, letter by letter.
UElement star_image(const Algebra& alg, const UElement& u) {
  const std::size_t n = alg.rank();
  UElement out;
  for (const auto& [m, c] : u.terms()) {
    UElement acc = alg.one();
    for (int a : m.f) acc = alg.star_multiply(acc, alg.F(a), StarSign::flipped);
    acc = alg.star_multiply(acc, alg.cartan(m.k, zero_vec(n)), StarSign::flipped);
    acc = alg.star_multiply(acc, alg.cartan(zero_vec(n), m.kp), StarSign::flipped);
    for (int a : m.e) acc = alg.star_multiply(acc, alg.E(a), StarSign::flipped);
    out += c * acc;
  }
  return out;
}

}  // namespace

// --- CartanElement -----------------------------------------------------------

CartanElement CartanElement::monomial(const RootVec& eta, const RootVec& phi, const Scalar& c) {
  CartanElement x;
  x.add(eta, phi, c);
  return x;
}

CartanElement CartanElement::project(const UElement& u) {
  CartanElement x;
  for (const auto& [m, c] : u.terms()) {
    if (m.f.empty() && m.e.empty()) x.add(m.kp, m.k, c);
  }
  return x;
}

Scalar CartanElement::coefficient(const RootVec& eta, const RootVec& phi) const {
  auto it = terms_.find({eta, phi});
  return it == terms_.end() ? Scalar() : it->second;
}

void CartanElement::add(const RootVec& eta, const RootVec& phi, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace({eta, phi}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool CartanElement::in_flat() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.second == -kv.first.first; });
}

CartanElement& CartanElement::operator+=(const CartanElement& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

CartanElement& CartanElement::operator-=(const CartanElement& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

CartanElement operator*(const Scalar& c, const CartanElement& x) {
  CartanElement r;
  for (const auto& [k, a] : x.terms_) r.add(k.first, k.second, c * a);
  return r;
}

CartanElement operator*(const CartanElement& a, const CartanElement& b) {
  CartanElement r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  }
  return r;
}

UElement CartanElement::to_element(const Algebra& alg) const {
  UElement u;
  for (const auto& [k, c] : terms_) u += c * alg.cartan(k.second, k.first);
  return u;
}

std::string render(const CartanElement& x) {
  if (x.is_zero()) return "0";
  UElement u;
  for (const auto& [k, c] : x.terms()) u.add(Monomial{{}, k.second, k.first, {}}, c);
  return render(u);
}

// --- Harish-Chandra map and characters ----------------------------------------

CartanElement gamma_minus_rho(const CartanDatum& d, const CartanElement& x) {
  const Weight rho = d.rho();
  CartanElement r;
  for (const auto& [k, c] : x.terms()) {
    const auto& [eta, phi] = k;
    const int ve = -integral(d.dot(rho, to_weight(phi - eta)), "rho-shift v-exponent");
    const int te = integral(d.skew(to_weight(phi + eta), rho), "rho-shift t-exponent");
    r.add(eta, phi, d.vt(ve, te) * c);
  }
  return r;
}

CartanElement hc_xi(const Algebra& alg, const UElement& u) {
  return gamma_minus_rho(alg.datum(), CartanElement::project(u));
}

Scalar rho_char(const CartanDatum& d, const Weight& lambda, const RootVec& eta, const RootVec& phi, CartanSign sign) {
  const int ve = integral(d.dot(lambda, to_weight(phi - eta)), "character v-exponent");
  int te = integral(d.skew(lambda, to_weight(phi + eta)), "character t-exponent");
  if (sign == CartanSign::printed) te = -te;
  return d.vt(ve, te);
}

Scalar rho_zero_char(const CartanDatum& d, const Weight& lambda, const RootVec& eta, const RootVec& phi) {
  return d.vt(2 * integral(d.dot(to_weight(eta + phi), lambda), "character v-exponent"), 0);
}

Scalar rho_pair_char(const CartanDatum& d, const Weight& lambda, const Weight& mu, const RootVec& eta,
                     const RootVec& phi, CartanSign sign) {
  return rho_char(d, lambda, eta, phi, sign) * rho_zero_char(d, mu, eta, phi);
}

Scalar rho_char(const CartanDatum& d, const Weight& lambda, const CartanElement& u, CartanSign sign) {
  Scalar s;
  for (const auto& [k, c] : u.terms()) s += c * rho_char(d, lambda, k.first, k.second, sign);
  return s;
}

Scalar rho_zero_char(const CartanDatum& d, const Weight& lambda, const CartanElement& u) {
  Scalar s;
  for (const auto& [k, c] : u.terms()) s += c * rho_zero_char(d, lambda, k.first, k.second);
  return s;
}

Scalar rho_pair_char(const CartanDatum& d, const Weight& lambda, const Weight& mu, const CartanElement& u,
                     CartanSign sign) {
  Scalar s;
  for (const auto& [k, c] : u.terms()) s += c * rho_pair_char(d, lambda, mu, k.first, k.second, sign);
  return s;
}

CartanElement weyl_on_flat(const WeylElement& sigma, const CartanElement& u) {
  if (!u.in_flat()) throw ConstraintError("Weyl action is defined on K'_eta K_{-eta} only");
  CartanElement r;
  for (const auto& [k, c] : u.terms()) {
    const RootVec& eta = k.first;
    RootVec s(eta.size(), 0);
    for (std::size_t i = 0; i < eta.size(); ++i) {
      for (std::size_t j = 0; j < eta.size(); ++j) s[i] += sigma.matrix[i][j] * eta[j];
    }
    r.add(s, -s, c);
  }
  return r;
}

WeylElement weyl_inverse(const CartanDatum& d, const WeylElement& sigma) {
  const std::size_t n = d.rank();
  for (const auto& w : d.weyl_group().elements) {
    bool id = true;
    for (std::size_t i = 0; i < n && id; ++i) {
      for (std::size_t j = 0; j < n && id; ++j) {
        int s = 0;
        for (std::size_t l = 0; l < n; ++l) s += w.matrix[i][l] * sigma.matrix[l][j];
        id = (s == (i == j ? 1 : 0));
      }
    }
    if (id) return w;
  }
  throw InvariantError("Weyl element has no inverse in the enumerated group");
}

// --- centrality --------------------------------------------------------------

bool commutes_with(const Algebra& alg, const UElement& u, const std::vector<UElement>& xs) {
  return std::all_of(xs.begin(), xs.end(), [&](const UElement& x) { return alg.commutator(x, u).is_zero(); });
}

bool is_central(const Algebra& alg, const UElement& u) {
  return central_by_routes(alg, generators(alg, all_indices(alg.rank()), true), u);
}

bool is_central_in(const Algebra& alg, const std::vector<int>& J, const UElement& u) {
  return central_by_routes(alg, generators(alg, J, true), u);
}

// --- lifts and z_lambda ---------------------------------------------------------

UElement lift_functional(const Pairing& p, const ScalarMatrix& psi, const RootVec& mu, const RootVec& nu,
                         const RootVec& eta, const RootVec& phi) {
  const ScalarMatrix c = lift_coefficients(p, psi, mu, nu);
  const auto dm = p.dual_basis(mu);
  const auto dn = p.dual_basis(nu);
  UElement u;
  for (std::size_t a = 0; a < c.size(); ++a) {
    for (std::size_t j = 0; j < c[a].size(); ++j) {
      if (!c[a][j].is_zero()) u.add(Monomial{dn->f_words[a], phi, eta - nu, dm->e_words[j]}, c[a][j]);
    }
  }
  return u;
}

CentralCandidate z_lambda(const Pairing& p, const Weight& lambda) {
  const Algebra& alg = p.algebra();
  const CartanDatum& d = alg.datum();
  if (!to_rootvec(lambda) || !d.is_dominant(lambda)) {
    throw ConstraintError("z_lambda needs lambda dominant and in the root lattice");
  }
  const WeightModule L = simple_module(alg, lambda);
  CentralCandidate out;
  out.element = materialise(trace_lift(p, L), Weight(alg.rank(), 0));
  out.degree = {zero_vec(alg.rank()), zero_vec(alg.rank())};
  out.certified = is_central(alg, out.element);
  return out;
}

CartanElement hc_image_of_trace(const CartanDatum& d, const Weight& lambda) {
  if (!to_rootvec(lambda)) throw ConstraintError("lambda must lie in the root lattice");
  CartanElement r;
  for (const auto& [mu, m] : d.weight_multiplicities(lambda)) {
    const RootVec e = *to_rootvec(mu);
    r.add(e, -e, Scalar(m));
  }
  return r;
}

CartanElement av(const CartanDatum& d, const Weight& lambda) {
  const auto l = to_rootvec(lambda);
  if (!l) throw ConstraintError("lambda must lie in the root lattice");
  const WeylGroup w = d.weyl_group();
  CartanElement r;
  const CartanElement base = CartanElement::monomial(*l, -*l);
  for (const auto& s : w.elements) r += weyl_on_flat(s, base);
  return Scalar(1) / Scalar(static_cast<long>(w.order())) * r;
}

// --- extra centre --------------------------------------------------------------

DegreeSolve solve_central_degree(const Algebra& alg, const RootVec& eta, int max_tr, int box, bool want_solutions) {
  const std::size_t n = alg.rank();
  DegreeSolve out;
  out.eta = eta;
  std::vector<Monomial> unknowns;
  for (const RootVec& nu : degrees_up_to(n, max_tr)) {
    const auto fs = alg.F_basis(nu);
    const auto es = alg.E_basis(nu);
    RootVec a(n, -box);
    while (true) {
      for (const auto& f : fs) {
        for (const auto& e : es) unknowns.push_back(Monomial{f, a, eta - nu - a, e});
      }
      std::size_t i = 0;
      while (i < n && a[i] == box) a[i++] = -box;
      if (i == n) break;
      ++a[i];
    }
  }
  out.unknowns = unknowns.size();

  // Row per (generator, monomial) of the commutators.
  std::map<std::pair<int, Monomial>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(unknowns.size());
  const auto gens = generators(alg, all_indices(n), false);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const UElement x(unknowns[u], 1);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (const auto& [m, c] : alg.commutator(gens[g], x).terms()) {
        auto [it, fresh] = rows.try_emplace({static_cast<int>(g), m}, rows.size());
        cols[u].emplace_back(it->second, c);
      }
    }
  }
  out.equations = rows.size();
  // Probe values first; the modular rank settles the common full-rank case.
  QMatrix q(rows.size(), std::vector<mpq_class>(unknowns.size()));
  bool pole = false;
  for (std::size_t u = 0; u < unknowns.size() && !pole; ++u) {
    for (const auto& [r, c] : cols[u]) {
      auto x = c.evaluate(probe_point().v, probe_point().t);
      if (!x) {
        pole = true;
        break;
      }
      q[r][u] = *x;
    }
  }
  auto symbolic = [&] {
    ScalarMatrix a(rows.size(), std::vector<Scalar>(unknowns.size()));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      for (const auto& [r, c] : cols[u]) a[r][u] = c;
    }
    return a;
  };
  if (rows.empty()) {
    out.rank = 0;
  } else if (auto rk = pole ? std::nullopt : rank_mod_prime(q); rk && *rk == unknowns.size()) {
    out.rank = *rk;
  } else if (!pole) {
    out.rank = rank(std::move(q));
  } else {
    out.rank = generic_rank(symbolic());
  }
  if (want_solutions && out.rank < out.unknowns) {
    for (const auto& sol : kernel_basis(symbolic(), unknowns.size())) {
      UElement z;
      for (std::size_t u = 0; u < unknowns.size(); ++u) z.add(unknowns[u], sol[u]);
      out.solutions.push_back(std::move(z));
    }
  }
  return out;
}

CriterionReport criterion(const Algebra& alg, const CriterionWindow& window) {
  const CartanDatum& d = alg.datum();
  const std::size_t n = d.rank();
  CriterionReport rep;
  rep.window = window;
  rep.kernel_basis = d.antisym_kernel();
  for (const auto& eta : rep.kernel_basis) {
    const UElement z = alg.cartan(eta, eta);
    const std::string name = "K'_{" + render_rootvec(eta) + "}K_{" + render_rootvec(eta) + "}";
    if (is_central(alg, z)) {
      rep.certified.emplace_back(name, z);
    } else {
      rep.counterexamples.push_back(name + " is not central");
      rep.ok = false;
    }
  }
  if (n == 1) {
    const UElement y = casimir(alg, 0);
    if (is_central(alg, y) && alg.degree(y) == BiDegree{unit_vec(1, 0), unit_vec(1, 0)}) {
      rep.certified.emplace_back("Y", y);
    } else {
      rep.counterexamples.push_back("Casimir Y is not central of degree (a1,a1)");
      rep.ok = false;
    }
  }
  if (!rep.kernel_basis.empty()) return rep;

  RootVec eta(n, -window.eta_norm);
  while (true) {
    int norm = 0;
    for (int x : eta) norm += std::abs(x);
    if (norm > 0 && norm <= window.eta_norm) {
      DegreeSolve s = solve_central_degree(alg, eta, window.max_tr, window.box, false);
      if (s.rank < s.unknowns) {
        // The probe only bounds the rank from below; settle it symbolically.
        s = solve_central_degree(alg, eta, window.max_tr, window.box, true);
        for (const auto& z : s.solutions) {
          rep.counterexamples.push_back("degree (" + render_rootvec(eta) + "," + render_rootvec(eta) + "): " + render(z));
          rep.ok = false;
        }
        if (s.solutions.empty()) s.rank = s.unknowns;
      }
      rep.solves.push_back(std::move(s));
    }
    std::size_t i = 0;
    while (i < n && eta[i] == window.eta_norm) eta[i++] = -window.eta_norm;
    if (i == n) break;
    ++eta[i];
  }
  return rep;
}

// --- U_J -------------------------------------------------------------------------

namespace {

bool supported_in(const RootVec& g, const std::vector<int>& J) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0 && std::find(J.begin(), J.end(), static_cast<int>(i)) == J.end()) return false;
  }
  return true;
}

// Words in the letters of J with letter counts gamma.
std::vector<Word> j_words(const RootVec& gamma, const std::vector<int>& J) {
  std::vector<Word> out;
  if (!supported_in(gamma, J)) return out;
  Word w;
  for (std::size_t i = 0; i < gamma.size(); ++i) w.insert(w.end(), gamma[i], static_cast<int>(i));
  std::sort(w.begin(), w.end());
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// Coordinates of an E (upper) or F (lower) word on the chosen basis of degree gamma.
std::vector<Scalar> coordinates(const Algebra& alg, const Word& w, bool upper, const std::vector<Word>& basis) {
  const UElement x = upper ? alg.E_word(w) : alg.F_word(w);
  std::vector<Scalar> c(basis.size());
  for (const auto& [m, s] : x.terms()) {
    const Word& key = upper ? m.e : m.f;
    auto it = std::find(basis.begin(), basis.end(), key);
    if (it == basis.end()) throw InvariantError("word reduces outside the graded basis");
    c[it - basis.begin()] = s;
  }
  return c;
}

// Projection onto the J-part along the pairing annihilator of the opposite
// J-part, in basis coordinates: proj[r][c] is the J-part coordinate r of basis
// element c.
ScalarMatrix j_projection(const Pairing& p, const RootVec& gamma, const std::vector<int>& J, bool upper) {
  const Algebra& alg = p.algebra();
  const std::vector<Word> mine = upper ? alg.E_basis(gamma) : alg.F_basis(gamma);
  const std::vector<Word> other = upper ? alg.F_basis(gamma) : alg.E_basis(gamma);
  const std::size_t dim = mine.size();
  ScalarMatrix id(dim, std::vector<Scalar>(dim));
  for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;

  // Spanning coordinates of the J-parts on both sides.
  auto span = [&](bool up, const std::vector<Word>& basis) {
    std::vector<std::vector<Scalar>> vs;
    for (const auto& w : j_words(gamma, J)) vs.push_back(coordinates(alg, w, up, basis));
    if (vs.empty()) return vs;
    auto q = evaluate(vs, probe_point());
    if (!q) throw InvariantError("J-part has a pole at the probe point");
    std::vector<std::vector<Scalar>> keep;
    for (std::size_t r : independent_rows(*q)) keep.push_back(vs[r]);
    return keep;
  };
  const auto mine_j = span(upper, mine);
  const auto other_j = span(!upper, other);
  if (mine_j.empty()) return ScalarMatrix(dim, std::vector<Scalar>(dim));
  if (mine_j.size() == dim && other_j.size() == dim) return id;

  // (x, y) for x in the basis of `mine`, y in the J-part of the other side.
  ScalarMatrix g(other_j.size(), std::vector<Scalar>(dim));
  for (std::size_t r = 0; r < other_j.size(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Scalar s;
      for (std::size_t b = 0; b < other.size(); ++b) {
        if (other_j[r][b].is_zero()) continue;
        s += other_j[r][b] * (upper ? p.word_pair(other[b], mine[c]) : p.word_pair(mine[c], other[b]));
      }
      g[r][c] = s;
    }
  }
  const auto annihilator = kernel_basis(g, dim);
  if (annihilator.size() + mine_j.size() != dim) throw InvariantError("U_J + R_J is not a direct sum at this degree");
  // Columns: J-part basis then annihilator basis; invert to read coordinates.
  ScalarMatrix b(dim, std::vector<Scalar>(dim));
  for (std::size_t c = 0; c < mine_j.size(); ++c) {
    for (std::size_t r = 0; r < dim; ++r) b[r][c] = mine_j[c][r];
  }
  for (std::size_t c = 0; c < annihilator.size(); ++c) {
    for (std::size_t r = 0; r < dim; ++r) b[r][mine_j.size() + c] = annihilator[c][r];
  }
  const ScalarMatrix binv = inverse(b);
  ScalarMatrix proj(dim, std::vector<Scalar>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Scalar s;
      for (std::size_t k = 0; k < mine_j.size(); ++k) {
        if (!binv[k][c].is_zero()) s += mine_j[k][r] * binv[k][c];
      }
      proj[r][c] = s;
    }
  }
  return proj;
}

}  // namespace

std::pair<UElement, UElement> decompose_UJ(const Pairing& p, const std::vector<int>& J, const UElement& u) {
  const Algebra& alg = p.algebra();
  const std::size_t n = alg.rank();
  std::map<std::pair<RootVec, bool>, ScalarMatrix> cache;
  auto projection = [&](const RootVec& gamma, bool upper) -> const ScalarMatrix& {
    auto key = std::make_pair(gamma, upper);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, j_projection(p, gamma, J, upper)).first;
    return it->second;
  };
  UElement uj;
  for (const auto& [m, c] : u.terms()) {
    const RootVec gf = word_degree(m.f, n);
    const RootVec ge = word_degree(m.e, n);
    const auto fb = alg.F_basis(gf);
    const auto eb = alg.E_basis(ge);
    const std::size_t fi = std::find(fb.begin(), fb.end(), m.f) - fb.begin();
    const std::size_t ei = std::find(eb.begin(), eb.end(), m.e) - eb.begin();
    const ScalarMatrix& pf = projection(gf, false);
    const ScalarMatrix& pe = projection(ge, true);
    for (std::size_t a = 0; a < fb.size(); ++a) {
      if (pf[a][fi].is_zero()) continue;
      for (std::size_t b = 0; b < eb.size(); ++b) {
        if (pe[b][ei].is_zero()) continue;
        uj.add(Monomial{fb[a], m.k, m.kp, eb[b]}, c * pf[a][fi] * pe[b][ei]);
      }
    }
  }
  return {uj, u - uj};
}

UElement casimir(const Algebra& alg, int i) {
  const int h = alg.datum().half_norm(i);
  const Scalar den = Scalar::monomial(h, 0) - Scalar::monomial(-h, 0);
  const Scalar inv2 = (den * den).inverse();
  return alg.multiply(alg.E(i), alg.F(i)) + (Scalar::monomial(-h, 0) * inv2) * alg.K(i) +
         (Scalar::monomial(h, 0) * inv2) * alg.Kp(i);
}

UJiReport centre_UJi_check(const Pairing& p, int i, const std::vector<Weight>& lambdas, int box) {
  const Algebra& alg = p.algebra();
  const CartanDatum& d = alg.datum();
  const std::size_t n = alg.rank();
  if (i < 0 || static_cast<std::size_t>(i) >= n) throw ConstraintError("index out of range");
  UJiReport rep;
  rep.index = i;
  const std::vector<int> Ji{i};
  const std::vector<UElement> gi{alg.E(i), alg.F(i), alg.K(i), alg.Kp(i)};
  const UElement X = alg.multiply(alg.K(i), alg.Kp(i));
  const UElement Y = casimir(alg, i);
  rep.x_central = commutes_with(alg, X, gi);
  rep.y_central = commutes_with(alg, Y, gi);
  const int h = d.half_norm(i);
  const Scalar den = Scalar::monomial(h, 0) - Scalar::monomial(-h, 0);
  const Scalar inv2 = (den * den).inverse();
  const UElement y2 = alg.multiply(alg.F(i), alg.E(i)) + (Scalar::monomial(h, 0) * inv2) * alg.K(i) +
                      (Scalar::monomial(-h, 0) * inv2) * alg.Kp(i);
  rep.y_forms_agree = (Y == y2);
  if (!rep.x_central) rep.counterexamples.push_back("X is not central in the rank-1 subalgebra");
  if (!rep.y_central) rep.counterexamples.push_back("Y is not central in the rank-1 subalgebra");
  if (!rep.y_forms_agree) rep.counterexamples.push_back("the two forms of Y differ");

  // K_x K'_y, x, y in the span of the other simple roots, with
  // E_i K_x K'_y = v^{-2k} K_x K'_y E_i; then K_x K'_y K_i^{-k} Y is central in U_{J_i}.
  std::vector<int> others;
  for (std::size_t j = 0; j < n; ++j) {
    if (static_cast<int>(j) != i) others.push_back(static_cast<int>(j));
  }
  const std::size_t m = others.size();
  std::vector<int> c(2 * m, -box);
  const RootVec ai = unit_vec(n, i);
  while (m > 0) {
    RootVec x = zero_vec(n), y = zero_vec(n);
    for (std::size_t a = 0; a < m; ++a) {
      x[others[a]] = c[a];
      y[others[a]] = c[m + a];
    }
    const Scalar f = alg.cartan_commute_factor(x, y, ai);
    for (int k = -4 * box - 2; k <= 4 * box + 2; ++k) {
      if (f == Scalar::monomial(-2 * k, 0)) {
        const UElement kxy = alg.cartan(x, y);
        rep.condition_elements.emplace_back(kxy, k);
        const UElement z = alg.multiply({kxy, alg.K(i, -k), Y});
        if (is_central_in(alg, Ji, z)) {
          rep.certified.push_back(z);
        } else {
          rep.counterexamples.push_back(render(z) + " is not central in U_J");
          rep.ok = false;
        }
      }
    }
    std::size_t a = 0;
    while (a < 2 * m && c[a] == box) c[a++] = -box;
    if (a == 2 * m) break;
    ++c[a];
  }

  for (const auto& lambda : lambdas) {
    const CentralCandidate z = z_lambda(p, lambda);
    const auto [z1, z2] = decompose_UJ(p, Ji, z.element);
    const bool ok = z.certified && is_central_in(alg, Ji, z1) && hc_xi(alg, z.element) == hc_xi(alg, z1);
    rep.image_checks.emplace_back(render_weight(lambda), ok);
    if (!ok) rep.ok = false;
  }
  rep.ok = rep.ok && rep.x_central && rep.y_central && rep.y_forms_agree;
  return rep;
}

CentralCandidate lift_degree_eta(const Algebra& alg, const RootVec& eta) {
  const CartanDatum& d = alg.datum();
  const std::size_t n = d.rank();
  if (eta.size() != n) throw ConstraintError("eta has the wrong rank");
  if (!in_antisym_kernel(d, eta)) throw ConstraintError("eta is not in the antisymmetric kernel");
  const auto nu = d.parity_lift(eta);
  if (!nu) throw ConstraintError("no parity lift of eta found");
  Weight half = to_weight(*nu);
  for (auto& x : half) x /= 2;
  const Weight lambda = d.dominant_conjugate(half);

  // One-parameter central element with leading Cartan orbit K_nu, Cartan
  // exponents K'_mu K_{-mu-nu'} formal; the substitution adds eta/2 to both.
  const Algebra one(d.one_parameter());
  const Pairing p1(one);
  const WeightModule L = simple_module(one, lambda);
  Weight shift = to_weight(eta);
  for (auto& x : shift) x /= 2;
  const UElement z1 = materialise(trace_lift(p1, L), shift);

  CentralCandidate out;
  out.element = star_image(alg, z1);
  out.degree = {eta, eta};
  if (auto deg = alg.degree(out.element); deg && !out.element.is_zero() && *deg != out.degree) {
    throw InvariantError("lifted element is not of degree (eta, eta)");
  }
  out.certified = is_central(alg, out.element);
  return out;
}

}  // namespace uvt
