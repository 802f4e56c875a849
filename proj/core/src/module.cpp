#include "uvt/module.hpp"

#include <algorithm>
#include <string>

#include "uvt/error.hpp"

namespace uvt {

namespace {

Weight minus(const Weight& lambda, const RootVec& nu) {
  Weight w = lambda;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= nu[i];
  return w;
}

int to_int(const mpq_class& q, const char* what) {
  if (q.get_den() != 1) throw ConstraintError(std::string(what) + " is not an integer");
  return static_cast<int>(q.get_num().get_si());
}

mpq_class floor_of(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(f);
}

// All nu >= 0 with tr(nu) = d, lexicographically descending.
std::vector<RootVec> layer(std::size_t n, int d) {
  std::vector<RootVec> out;
  RootVec cur(n, 0);
  auto go = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  go(go, 0, d);
  return out;
}

Monomial f_monomial(std::size_t n, const Word& w) { return Monomial{w, zero_vec(n), zero_vec(n), {}}; }

// Rows independent at the probe point that sees the larger rank.
struct Selection {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> pivots;
};

Selection select_independent(const ScalarMatrix& m) {
  Selection best;
  bool found = false;
  for (const EvalPoint* p : {&probe_point(), &second_probe_point()}) {
    auto e = evaluate(m, *p);
    if (!e) continue;
    auto rows = independent_rows(*e);
    if (!found || rows.size() > best.rows.size()) {
      QMatrix sub;
      for (auto r : rows) sub.push_back((*e)[r]);
      best.pivots = pivot_columns(sub);
      best.rows = std::move(rows);
      found = true;
    }
  }
  if (!found) throw InvariantError("module vectors have poles at both probe points");
  return best;
}

}  // namespace

WeightModule::WeightModule(const Algebra& alg, Weight lambda) : alg_(&alg), lambda_(std::move(lambda)) {
  const std::size_t n = alg.rank();
  if (lambda_.size() != n) throw ConstraintError("weight has " + std::to_string(lambda_.size()) + " coordinates, rank is " + std::to_string(n));
  const auto& d = alg.datum();
  t_shift_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Weight ai = to_weight(unit_vec(n, i));
    to_int(d.dot(ai, lambda_), "i.lambda");
    const mpq_class s = d.skew(lambda_, ai);
    t_shift_[i] = d.t_free() ? mpq_class(0) : mpq_class(s - floor_of(s));
  }
  e_.resize(n);
  f_.resize(n);
}

std::optional<std::size_t> WeightModule::space_index(const RootVec& depth) const {
  auto it = index_.find(depth);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void WeightModule::add_space(const RootVec& depth, std::vector<Word> labels) {
  WeightSpace s;
  s.depth = depth;
  s.weight = minus(lambda_, depth);
  s.offset = dim_;
  s.dim = labels.size();
  s.labels = std::move(labels);
  index_[depth] = spaces_.size();
  for (std::size_t k = 0; k < s.dim; ++k) owner_.push_back(spaces_.size());
  dim_ += s.dim;
  window_ = std::max(window_, tr(depth));
  spaces_.push_back(std::move(s));
}

void WeightModule::set_eigenvalues() {
  const std::size_t n = alg_->rank();
  const auto& d = alg_->datum();
  k_eigen_.assign(n, {});
  kp_eigen_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const Weight ai = to_weight(unit_vec(n, i));
    for (const auto& s : spaces_) {
      const int ve = to_int(d.dot(ai, s.weight), "i.mu");
      const int te = d.t_free() ? 0 : to_int(d.skew(s.weight, ai) - t_shift_[i], "t-exponent");
      k_eigen_[i].push_back(d.vt(ve, te));
      kp_eigen_[i].push_back(d.vt(-ve, te));
    }
  }
  for (auto& cols : e_) cols.resize(dim_);
  for (auto& cols : f_) cols.resize(dim_);
}

Vector WeightModule::basis_vector(std::size_t k) const {
  Vector x(dim_);
  x.at(k) = 1;
  return x;
}

Vector WeightModule::apply_columns(const std::vector<Column>& m, const Vector& x) const {
  Vector y(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (x[j].is_zero()) continue;
    for (const auto& [r, c] : m[j]) y[r] += c * x[j];
  }
  return y;
}

Vector WeightModule::apply_E(int i, const Vector& x) const { return apply_columns(e_.at(i), x); }
Vector WeightModule::apply_F(int i, const Vector& x) const { return apply_columns(f_.at(i), x); }

Vector WeightModule::apply_K(int i, int power, const Vector& x) const {
  Vector y(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (!x[j].is_zero()) y[j] = k_eigen_.at(i)[owner_[j]].pow(power) * x[j];
  }
  return y;
}

Vector WeightModule::apply_Kp(int i, int power, const Vector& x) const {
  Vector y(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (!x[j].is_zero()) y[j] = kp_eigen_.at(i)[owner_[j]].pow(power) * x[j];
  }
  return y;
}

ScalarMatrix WeightModule::dense(const std::vector<Column>& m) const {
  ScalarMatrix out(dim_, std::vector<Scalar>(dim_));
  for (std::size_t j = 0; j < dim_; ++j) {
    for (const auto& [r, c] : m[j]) out[r][j] = c;
  }
  return out;
}

ScalarMatrix WeightModule::E(int i) const { return dense(e_.at(i)); }
ScalarMatrix WeightModule::F(int i) const { return dense(f_.at(i)); }

ScalarMatrix WeightModule::K(int i, int power) const {
  ScalarMatrix out(dim_, std::vector<Scalar>(dim_));
  for (std::size_t j = 0; j < dim_; ++j) out[j][j] = k_eigen_.at(i)[owner_[j]].pow(power);
  return out;
}

ScalarMatrix WeightModule::Kp(int i, int power) const {
  ScalarMatrix out(dim_, std::vector<Scalar>(dim_));
  for (std::size_t j = 0; j < dim_; ++j) out[j][j] = kp_eigen_.at(i)[owner_[j]].pow(power);
  return out;
}

Vector WeightModule::act_monomial(const Monomial& m, const Vector& x) const {
  const std::size_t n = alg_->rank();
  mpq_class shift = 0;
  for (std::size_t j = 0; j < n; ++j) shift += t_shift_[j] * (m.k[j] + m.kp[j]);
  for (int a : m.e) shift += t_shift_[a];
  if (shift.get_den() != 1) {
    throw ConstraintError("action needs a fractional power of t; the weight is not in the root lattice");
  }
  Vector y = x;
  for (auto it = m.e.rbegin(); it != m.e.rend(); ++it) y = apply_E(*it, y);
  for (std::size_t j = 0; j < n; ++j) {
    if (m.k[j] != 0) y = apply_K(static_cast<int>(j), m.k[j], y);
    if (m.kp[j] != 0) y = apply_Kp(static_cast<int>(j), m.kp[j], y);
  }
  for (auto it = m.f.rbegin(); it != m.f.rend(); ++it) y = apply_F(*it, y);
  const int s = static_cast<int>(shift.get_num().get_si());
  if (s != 0) {
    const Scalar c = Scalar::t().pow(s);
    for (auto& e : y) e *= c;
  }
  return y;
}

Vector WeightModule::act(const UElement& u, const Vector& x) const {
  if (x.size() != dim_) throw ConstraintError("vector has the wrong length");
  Vector y(dim_);
  for (const auto& [m, c] : u.terms()) {
    const Vector z = act_monomial(m, x);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!z[j].is_zero()) y[j] += c * z[j];
    }
  }
  return y;
}

ScalarMatrix WeightModule::matrix(const UElement& u) const {
  ScalarMatrix out(dim_, std::vector<Scalar>(dim_));
  for (std::size_t j = 0; j < dim_; ++j) {
    const Vector col = act(u, basis_vector(j));
    for (std::size_t r = 0; r < dim_; ++r) out[r][j] = col[r];
  }
  return out;
}

WeightModule verma_truncated(const Algebra& alg, const Weight& lambda, int depth) {
  if (depth < 0) throw ConstraintError("depth must be nonnegative");
  const std::size_t n = alg.rank();
  WeightModule m(alg, lambda);
  for (int d = 0; d <= depth; ++d) {
    for (const auto& nu : layer(n, d)) m.add_space(nu, alg.F_basis(nu));
  }
  m.window_ = depth;
  m.truncated_ = true;
  m.set_eigenvalues();

  // Eigenvalues of K_j, K'_j on v_lambda, without t^{q_j}.
  const std::size_t top = 0;
  for (std::size_t s = 0; s < m.spaces_.size(); ++s) {
    const WeightSpace& sp = m.spaces_[s];
    for (std::size_t k = 0; k < sp.dim; ++k) {
      const std::size_t col = sp.offset + k;
      const Monomial fw = f_monomial(n, sp.labels[k]);
      for (std::size_t i = 0; i < n; ++i) {
        const int ii = static_cast<int>(i);
        // F_i
        const RootVec down = sp.depth + unit_vec(n, i);
        if (auto t = m.space_index(down)) {
          const WeightSpace& target = m.spaces_[*t];
          for (const auto& [mono, c] : alg.multiply(alg.F(ii), UElement(fw, 1)).terms()) {
            auto pos = std::find(target.labels.begin(), target.labels.end(), mono.f);
            if (pos == target.labels.end() || !mono.e.empty()) throw InvariantError("F action left the basis");
            m.f_[i][col][target.offset + static_cast<std::size_t>(pos - target.labels.begin())] = c;
          }
        }
        // E_i: straighten E_i F_w and let the Cartan part act on v_lambda.
        if (sp.depth[i] == 0) continue;
        const RootVec up = sp.depth - unit_vec(n, i);
        const WeightSpace& target = m.spaces_[*m.space_index(up)];
        for (const auto& [mono, c] : alg.multiply(alg.E(ii), UElement(fw, 1)).terms()) {
          if (!mono.e.empty()) continue;
          Scalar coeff = c;
          mpq_class shift = -m.t_shift_[i];
          for (std::size_t j = 0; j < n; ++j) {
            if (mono.k[j] != 0) coeff *= m.k_eigen_[j][top].pow(mono.k[j]);
            if (mono.kp[j] != 0) coeff *= m.kp_eigen_[j][top].pow(mono.kp[j]);
            shift += m.t_shift_[j] * (mono.k[j] + mono.kp[j]);
          }
          if (shift.get_den() != 1) throw InvariantError("E action is not homogeneous in t");
          if (shift != 0) coeff *= Scalar::t().pow(static_cast<int>(shift.get_num().get_si()));
          auto pos = std::find(target.labels.begin(), target.labels.end(), mono.f);
          if (pos == target.labels.end()) throw InvariantError("E action left the basis");
          auto& slot = m.e_[i][col][target.offset + static_cast<std::size_t>(pos - target.labels.begin())];
          slot += coeff;
        }
      }
    }
  }
  for (auto& cols : m.e_) {
    for (auto& col : cols) std::erase_if(col, [](const auto& kv) { return kv.second.is_zero(); });
  }
  return m;
}

namespace {

// Joint kernel of the E_i on one weight space, in local coordinates.
std::vector<Vector> singular_in_space(const WeightModule& m, std::size_t s) {
  const std::size_t n = m.algebra().rank();
  const WeightSpace& sp = m.spaces()[s];
  ScalarMatrix rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> images;
    for (std::size_t k = 0; k < sp.dim; ++k) images.push_back(m.apply_E(static_cast<int>(i), m.basis_vector(sp.offset + k)));
    for (std::size_t r = 0; r < m.dim(); ++r) {
      std::vector<Scalar> row(sp.dim);
      bool any = false;
      for (std::size_t k = 0; k < sp.dim; ++k) {
        row[k] = images[k][r];
        any = any || !row[k].is_zero();
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  if (!rows.empty()) return kernel_basis(rows, sp.dim);
  std::vector<Vector> ker(sp.dim, Vector(sp.dim));
  for (std::size_t k = 0; k < sp.dim; ++k) ker[k][k] = 1;
  return ker;
}

}  // namespace

std::vector<Vector> singular_vectors(const WeightModule& m) {
  std::vector<Vector> out;
  for (std::size_t s = 1; s < m.spaces().size(); ++s) {
    const WeightSpace& sp = m.spaces()[s];
    for (const auto& kv : singular_in_space(m, s)) {
      Vector x = m.zero();
      for (std::size_t k = 0; k < sp.dim; ++k) x[sp.offset + k] = kv[k];
      out.push_back(std::move(x));
    }
  }
  return out;
}

int simple_module_depth(const CartanDatum& datum, const Weight& lambda) {
  const std::size_t n = datum.rank();
  int depth = 0;
  for (const auto& [mu, mult] : datum.weight_multiplicities(lambda)) {
    int d = 0;
    for (std::size_t i = 0; i < n; ++i) d += to_int(lambda[i] - mu[i], "lambda - mu");
    depth = std::max(depth, d);
  }
  for (std::size_t i = 0; i < n; ++i) {
    depth = std::max(depth, to_int(datum.dot(to_weight(unit_vec(n, i)), lambda), "i.lambda") + 1);
  }
  return depth + 1;
}

WeightModule simple_module_from_verma(const Algebra& alg, const Weight& lambda, std::optional<int> depth) {
  const auto& datum = alg.datum();
  if (!datum.is_dominant(lambda)) throw ConstraintError("simple_module needs a dominant integral weight");
  const int d = depth.value_or(simple_module_depth(datum, lambda));
  const WeightModule verma = verma_truncated(alg, lambda, d);
  const std::size_t n = alg.rank();

  // Per weight space: basis of the submodule N, its pivot columns and the
  // inverse of the pivot block, used to reduce vectors modulo N.
  struct Sub {
    std::vector<Vector> basis;  // local coordinates
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free;
    ScalarMatrix inv;  // inverse of the transposed pivot block
  };
  std::vector<Sub> sub(verma.spaces().size());
  auto local = [&](const WeightSpace& sp, const Vector& x) {
    return Vector(x.begin() + static_cast<long>(sp.offset), x.begin() + static_cast<long>(sp.offset + sp.dim));
  };
  for (std::size_t s = 0; s < verma.spaces().size(); ++s) {
    const WeightSpace& sp = verma.spaces()[s];
    ScalarMatrix cand;
    if (s > 0) cand = singular_in_space(verma, s);
    for (std::size_t i = 0; i < n; ++i) {
      if (sp.depth[i] == 0) continue;
      const std::size_t above = *verma.space_index(sp.depth - unit_vec(n, i));
      const WeightSpace& up = verma.spaces()[above];
      for (const auto& b : sub[above].basis) {
        Vector x = verma.zero();
        for (std::size_t k = 0; k < up.dim; ++k) x[up.offset + k] = b[k];
        cand.push_back(local(sp, verma.apply_F(static_cast<int>(i), x)));
      }
    }
    Sub& out = sub[s];
    if (!cand.empty()) {
      const Selection sel = select_independent(cand);
      for (auto r : sel.rows) out.basis.push_back(cand[r]);
      out.pivots = sel.pivots;
    }
    std::vector<bool> piv(sp.dim, false);
    for (auto p : out.pivots) piv[p] = true;
    for (std::size_t k = 0; k < sp.dim; ++k) {
      if (!piv[k]) out.free.push_back(k);
    }
    if (!out.basis.empty()) {
      ScalarMatrix a(out.pivots.size(), std::vector<Scalar>(out.basis.size()));
      for (std::size_t p = 0; p < out.pivots.size(); ++p) {
        for (std::size_t b = 0; b < out.basis.size(); ++b) a[p][b] = out.basis[b][out.pivots[p]];
      }
      out.inv = inverse(a);
    }
  }

  WeightModule m(alg, lambda);
  std::vector<std::size_t> image(verma.spaces().size(), 0);  // verma space -> module space
  std::vector<bool> kept(verma.spaces().size(), false);
  for (std::size_t s = 0; s < verma.spaces().size(); ++s) {
    const WeightSpace& sp = verma.spaces()[s];
    if (sub[s].free.empty()) continue;
    std::vector<Word> labels;
    for (auto k : sub[s].free) labels.push_back(sp.labels[k]);
    image[s] = m.spaces_.size();
    kept[s] = true;
    m.add_space(sp.depth, std::move(labels));
  }
  m.set_eigenvalues();

  // Coordinates of a Verma vector supported on space s, modulo N.
  auto reduce = [&](std::size_t s, const Vector& x) {
    const WeightSpace& sp = verma.spaces()[s];
    const Sub& su = sub[s];
    Vector y = local(sp, x);
    if (!su.basis.empty()) {
      // c = inv * y_pivots; y -= sum c_b basis_b.
      for (std::size_t b = 0; b < su.basis.size(); ++b) {
        Scalar c;
        for (std::size_t p = 0; p < su.pivots.size(); ++p) {
          if (!su.inv[b][p].is_zero() && !y[su.pivots[p]].is_zero()) c += su.inv[b][p] * y[su.pivots[p]];
        }
        if (c.is_zero()) continue;
        for (std::size_t k = 0; k < sp.dim; ++k) {
          if (!su.basis[b][k].is_zero()) y[k] -= c * su.basis[b][k];
        }
      }
      for (auto p : su.pivots) {
        if (!y[p].is_zero()) throw InvariantError("reduction modulo the submodule failed");
      }
    }
    Vector out;
    for (auto k : su.free) out.push_back(y[k]);
    return out;
  };

  for (std::size_t s = 0; s < verma.spaces().size(); ++s) {
    if (!kept[s]) continue;
    const WeightSpace& sp = verma.spaces()[s];
    const WeightSpace& msp = m.spaces_[image[s]];
    for (std::size_t q = 0; q < sub[s].free.size(); ++q) {
      const Vector x = verma.basis_vector(sp.offset + sub[s].free[q]);
      const std::size_t col = msp.offset + q;
      for (std::size_t i = 0; i < n; ++i) {
        const int ii = static_cast<int>(i);
        const RootVec down = sp.depth + unit_vec(n, i);
        if (auto t = verma.space_index(down)) {
          const Vector y = reduce(*t, verma.apply_F(ii, x));
          const std::size_t off = kept[*t] ? m.spaces_[image[*t]].offset : 0;
          for (std::size_t k = 0; k < y.size(); ++k) {
            if (!y[k].is_zero()) m.f_[i][col][off + k] = y[k];
          }
        } else {
          throw InvariantError("Verma truncation too shallow for the simple module");
        }
        if (sp.depth[i] == 0) continue;
        const std::size_t t = *verma.space_index(sp.depth - unit_vec(n, i));
        const Vector y = reduce(t, verma.apply_E(ii, x));
        const std::size_t off = kept[t] ? m.spaces_[image[t]].offset : 0;
        for (std::size_t k = 0; k < y.size(); ++k) {
          if (!y[k].is_zero()) m.e_[i][col][off + k] = y[k];
        }
      }
    }
  }
  return m;
}

WeightModule simple_module(const Algebra& alg, const Weight& lambda) {
  const auto& datum = alg.datum();
  if (!datum.is_dominant(lambda)) throw ConstraintError("simple_module needs a dominant integral weight");
  const std::size_t n = alg.rank();
  WeightModule m(alg, lambda);

  struct Layer {
    std::vector<Word> labels;
    std::vector<std::vector<Vector>> e_img;      // [k][j]: E_j of basis vector k, in space depth - a_j
    std::map<int, std::vector<Vector>> f_in;     // [i][b]: F_i of basis b of depth - a_i, here
  };
  std::map<RootVec, Layer> built;
  std::vector<RootVec> order;
  auto eigen_gap = [&](int i, const RootVec& depth) {
    const Weight mu = minus(lambda, depth);
    const Weight ai = to_weight(unit_vec(n, static_cast<std::size_t>(i)));
    const int ve = to_int(datum.dot(ai, mu), "i.mu");
    const int te = datum.t_free() ? 0 : to_int(datum.skew(mu, ai) - m.t_shift_[i], "t-exponent");
    return (datum.vt(ve, te) - datum.vt(-ve, te)) / (Scalar::v() - Scalar::monomial(-1, 0));
  };

  Layer top;
  top.labels.push_back({});
  top.e_img.push_back(std::vector<Vector>(n));
  built[zero_vec(n)] = std::move(top);
  order.push_back(zero_vec(n));

  for (int d = 1;; ++d) {
    bool any = false;
    for (const auto& nu : layer(n, d)) {
      // Candidates F_i b for b a basis vector of the space above.
      std::vector<std::pair<int, std::size_t>> cand;
      for (std::size_t i = 0; i < n; ++i) {
        if (nu[i] == 0) continue;
        auto it = built.find(nu - unit_vec(n, i));
        if (it == built.end()) continue;
        for (std::size_t b = 0; b < it->second.labels.size(); ++b) cand.push_back({static_cast<int>(i), b});
      }
      if (cand.empty()) continue;
      // Row of a candidate: its E_j-images, concatenated over j.
      std::vector<std::size_t> widths(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        if (nu[j] == 0) continue;
        auto it = built.find(nu - unit_vec(n, j));
        if (it != built.end()) widths[j] = it->second.labels.size();
      }
      ScalarMatrix rows;
      for (const auto& [i, b] : cand) {
        const RootVec above = nu - unit_vec(n, static_cast<std::size_t>(i));
        const Layer& src = built.at(above);
        std::vector<Scalar> row;
        for (std::size_t j = 0; j < n; ++j) {
          Vector img(widths[j]);
          if (widths[j] > 0) {
            const Vector& ejb = src.e_img[b][j];
            if (!ejb.empty()) {
              const Layer& tgt = built.at(nu - unit_vec(n, j));
              const auto& fi = tgt.f_in.at(i);
              for (std::size_t k = 0; k < ejb.size(); ++k) {
                if (ejb[k].is_zero()) continue;
                for (std::size_t r = 0; r < img.size(); ++r) {
                  if (!fi[k][r].is_zero()) img[r] += ejb[k] * fi[k][r];
                }
              }
            }
            if (static_cast<int>(j) == i) img[b] += eigen_gap(i, above);
          }
          row.insert(row.end(), img.begin(), img.end());
        }
        rows.push_back(std::move(row));
      }
      const Selection sel = select_independent(rows);
      if (sel.rows.empty()) continue;
      any = true;
      const std::size_t r = sel.rows.size();
      ScalarMatrix a(r, std::vector<Scalar>(r));
      for (std::size_t p = 0; p < r; ++p) {
        for (std::size_t k = 0; k < r; ++k) a[p][k] = rows[sel.rows[k]][sel.pivots[p]];
      }
      const ScalarMatrix inv = inverse(a);

      Layer lay;
      for (auto idx : sel.rows) {
        const auto& [i, b] = cand[idx];
        Word w{i};
        const Word& rest = built.at(nu - unit_vec(n, static_cast<std::size_t>(i))).labels[b];
        w.insert(w.end(), rest.begin(), rest.end());
        lay.labels.push_back(std::move(w));
        std::vector<Vector> per_j(n);
        std::size_t pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
          per_j[j] = Vector(rows[idx].begin() + static_cast<long>(pos), rows[idx].begin() + static_cast<long>(pos + widths[j]));
          pos += widths[j];
        }
        lay.e_img.push_back(std::move(per_j));
      }
      // Coordinates of every candidate on the chosen basis, checked on all columns.
      for (std::size_t c = 0; c < cand.size(); ++c) {
        const auto& [i, b] = cand[c];
        Vector coord(r);
        for (std::size_t k = 0; k < r; ++k) {
          for (std::size_t p = 0; p < r; ++p) {
            const Scalar& y = rows[c][sel.pivots[p]];
            if (!inv[k][p].is_zero() && !y.is_zero()) coord[k] += inv[k][p] * y;
          }
        }
        for (std::size_t col = 0; col < rows[c].size(); ++col) {
          Scalar s;
          for (std::size_t k = 0; k < r; ++k) {
            if (!coord[k].is_zero()) s += coord[k] * rows[sel.rows[k]][col];
          }
          if (s != rows[c][col]) throw InvariantError("weight space basis is not spanning");
        }
        auto& fi = lay.f_in[i];
        const std::size_t above_dim = built.at(nu - unit_vec(n, static_cast<std::size_t>(i))).labels.size();
        if (fi.empty()) fi.resize(above_dim);
        fi[b] = std::move(coord);
      }
      built[nu] = std::move(lay);
      order.push_back(nu);
    }
    if (!any) break;
  }

  for (const auto& nu : order) m.add_space(nu, built.at(nu).labels);
  m.set_eigenvalues();
  for (const auto& nu : order) {
    const Layer& lay = built.at(nu);
    const WeightSpace& sp = m.spaces_[*m.space_index(nu)];
    for (std::size_t k = 0; k < lay.labels.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vector& img = lay.e_img[k][j];
        if (img.empty()) continue;
        const std::size_t off = m.spaces_[*m.space_index(nu - unit_vec(n, j))].offset;
        for (std::size_t q = 0; q < img.size(); ++q) {
          if (!img[q].is_zero()) m.e_[j][sp.offset + k][off + q] = img[q];
        }
      }
    }
    for (const auto& [i, cols] : lay.f_in) {
      const std::size_t off = m.spaces_[*m.space_index(nu - unit_vec(n, static_cast<std::size_t>(i)))].offset;
      for (std::size_t b = 0; b < cols.size(); ++b) {
        for (std::size_t q = 0; q < cols[b].size(); ++q) {
          if (!cols[b][q].is_zero()) m.f_[i][off + b][sp.offset + q] = cols[b][q];
        }
      }
    }
  }
  return m;
}

std::vector<Scalar> theta(const WeightModule& m) {
  const auto& d = m.algebra().datum();
  const Weight rho = d.rho();
  std::vector<Scalar> out;
  for (const auto& sp : m.spaces()) {
    const int e = to_int(2 * d.dot(rho, sp.weight), "2 rho . mu");
    for (std::size_t k = 0; k < sp.dim; ++k) out.push_back(Scalar::monomial(-e, 0));
  }
  return out;
}

Scalar quantum_trace(const WeightModule& m, const UElement& u) {
  // Only weight-preserving monomials reach the diagonal.
  UElement diag;
  for (const auto& [mono, c] : u.terms()) {
    RootVec fdeg = zero_vec(m.algebra().rank());
    for (int a : mono.f) fdeg[a] += 1;
    RootVec edeg = zero_vec(m.algebra().rank());
    for (int a : mono.e) edeg[a] += 1;
    if (fdeg == edeg) diag.add(mono, c);
  }
  const auto th = theta(m);
  Scalar total;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    Vector x = m.basis_vector(k);
    x[k] = th[k];
    const Vector y = m.act(diag, x);
    total += y[k];
  }
  return total;
}

Scalar matrix_coefficient(const WeightModule& m, const Vector& f, const Vector& x, const UElement& u) {
  if (f.size() != m.dim()) throw ConstraintError("functional has the wrong length");
  const Vector y = m.act(u, x);
  Scalar total;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    if (!f[k].is_zero() && !y[k].is_zero()) total += f[k] * y[k];
  }
  return total;
}

}  // namespace uvt
