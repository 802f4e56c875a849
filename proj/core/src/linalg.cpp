#include "uvt/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "uvt/error.hpp"

namespace uvt {

const EvalPoint& probe_point() {
  static const EvalPoint p{mpq_class(10007, 131), mpq_class(7919, 263)};
  return p;
}

const EvalPoint& second_probe_point() {
  static const EvalPoint p{mpq_class(-4099, 53), mpq_class(389, 1021)};
  return p;
}

std::optional<QMatrix> evaluate(const ScalarMatrix& m, const EvalPoint& p) {
  QMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) {
      auto val = x.evaluate(p.v, p.t);
      if (!val) return std::nullopt;
      out[i].push_back(std::move(*val));
    }
  }
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const mpq_class inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::optional<std::size_t> rank_mod_prime(const QMatrix& m) {
  using u64 = std::uint64_t;
  __extension__ using u128 = unsigned __int128;
  constexpr u64 p = (u64(1) << 61) - 1;
  auto mul = [](u64 a, u64 b) { return static_cast<u64>((u128(a) * b) % p); };
  auto pw = [&](u64 a, u64 e) {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a)) {
      if (e & 1) r = mul(r, a);
    }
    return r;
  };
  const mpz_class pz = static_cast<unsigned long>(p);
  auto reduce = [&](const mpz_class& z) {
    mpz_class r = z % pz;
    if (r < 0) r += pz;
    return static_cast<u64>(r.get_ui());
  };
  std::vector<std::vector<u64>> a;
  a.reserve(m.size());
  for (const auto& row : m) {
    std::vector<u64> r(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0) continue;
      const u64 den = reduce(row[j].get_den());
      if (den == 0) return std::nullopt;
      r[j] = mul(reduce(row[j].get_num()), pw(den, p - 2));
    }
    a.push_back(std::move(r));
  }
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < a.size(); ++c) {
    std::size_t piv = rk;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rk], a[piv]);
    const u64 inv = pw(a[rk][c], p - 2);
    for (std::size_t r = rk + 1; r < a.size(); ++r) {
      if (a[r][c] == 0) continue;
      const u64 f = mul(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        if (a[rk][k] == 0) continue;
        a[r][k] = (a[r][k] + p - mul(f, a[rk][k])) % p;
      }
    }
    ++rk;
  }
  return rk;
}

std::vector<std::size_t> pivot_columns(QMatrix m) { return rref(m); }

std::vector<std::size_t> independent_rows(const QMatrix& m) {
  std::vector<std::size_t> kept;
  // Echelon basis of the rows kept so far, each with its pivot column.
  std::vector<std::pair<std::size_t, std::vector<mpq_class>>> basis;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<mpq_class> r = m[i];
    for (const auto& [pc, b] : basis) {
      if (r[pc] == 0) continue;
      const mpq_class f = r[pc];
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= f * b[k];
    }
    auto it = std::find_if(r.begin(), r.end(), [](const mpq_class& x) { return x != 0; });
    if (it == r.end()) continue;
    const std::size_t pc = static_cast<std::size_t>(it - r.begin());
    const mpq_class inv = 1 / r[pc];
    for (auto& x : r) x *= inv;
    for (auto& [opc, b] : basis) {
      if (b[pc] == 0) continue;
      const mpq_class f = b[pc];
      for (std::size_t k = 0; k < b.size(); ++k) b[k] -= f * r[k];
    }
    basis.emplace_back(pc, std::move(r));
    kept.push_back(i);
  }
  return kept;
}

std::size_t generic_rank(const ScalarMatrix& m) {
  std::size_t best = 0;
  for (const EvalPoint* p : {&probe_point(), &second_probe_point()}) {
    if (auto q = evaluate(m, *p)) best = std::max(best, rank(std::move(*q)));
  }
  return best;
}

namespace {

std::size_t weight(const Scalar& x) { return x.num().size() + x.den().size(); }

// Gauss-Jordan on [a | b]; a square. Returns a^{-1} b.
ScalarMatrix solve_many(ScalarMatrix a, ScalarMatrix b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      if (p == n || weight(a[r][c]) < weight(a[p][c])) p = r;
    }
    if (p == n) throw InvariantError("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const Scalar inv = a[c][c].inverse();
    for (std::size_t k = c; k < n; ++k) a[c][k] *= inv;
    for (auto& x : b[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Scalar f = a[r][c];
      for (std::size_t k = c; k < n; ++k) {
        if (!a[c][k].is_zero()) a[r][k] -= f * a[c][k];
      }
      for (std::size_t k = 0; k < b[r].size(); ++k) {
        if (!b[c][k].is_zero()) b[r][k] -= f * b[c][k];
      }
    }
  }
  return b;
}

}  // namespace

ScalarMatrix inverse(const ScalarMatrix& m) {
  const std::size_t n = m.size();
  ScalarMatrix id(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return solve_many(m, std::move(id));
}

Scalar determinant(ScalarMatrix a) {
  const std::size_t n = a.size();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      if (p == n || weight(a[r][c]) < weight(a[p][c])) p = r;
    }
    if (p == n) return Scalar(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Scalar inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Scalar f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) {
        if (!a[c][k].is_zero()) a[r][k] -= f * a[c][k];
      }
    }
  }
  return det;
}

std::vector<std::vector<Scalar>> kernel_basis(const ScalarMatrix& m, std::size_t cols) {
  std::vector<std::vector<Scalar>> out;
  // Pick the probe point that sees the larger rank.
  std::optional<QMatrix> q;
  std::size_t best = 0;
  for (const EvalPoint* p : {&probe_point(), &second_probe_point()}) {
    auto e = evaluate(m, *p);
    if (!e) continue;
    const std::size_t r = rank(*e);
    if (!q || r > best) {
      best = r;
      q = std::move(e);
    }
  }
  if (!q) throw InvariantError("matrix has poles at both probe points");
  const auto rows = independent_rows(*q);
  QMatrix sub;
  for (auto r : rows) sub.push_back((*q)[r]);
  const auto pivots = pivot_columns(sub);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  if (free_cols.empty()) return out;
  if (pivots.empty()) {
    for (auto f : free_cols) {
      std::vector<Scalar> x(cols);
      x[f] = 1;
      out.push_back(std::move(x));
    }
    return out;
  }
  ScalarMatrix a(rows.size(), std::vector<Scalar>(pivots.size()));
  ScalarMatrix b(rows.size(), std::vector<Scalar>(free_cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < pivots.size(); ++j) a[i][j] = m[rows[i]][pivots[j]];
    for (std::size_t j = 0; j < free_cols.size(); ++j) b[i][j] = -m[rows[i]][free_cols[j]];
  }
  ScalarMatrix x = solve_many(std::move(a), std::move(b));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::vector<Scalar> vec(cols);
    vec[free_cols[j]] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) vec[pivots[i]] = x[i][j];
    out.push_back(std::move(vec));
  }
  return out;
}

std::vector<Scalar> mat_vec(const ScalarMatrix& m, const std::vector<Scalar>& x) {
  std::vector<Scalar> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!m[i][j].is_zero() && !x[j].is_zero()) out[i] += m[i][j] * x[j];
    }
  }
  return out;
}

}  // namespace uvt
