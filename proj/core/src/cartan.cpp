#include "uvt/cartan.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "uvt/error.hpp"

namespace uvt {

RootVec zero_vec(std::size_t rank) { return RootVec(rank, 0); }

RootVec unit_vec(std::size_t rank, std::size_t i) {
  RootVec r(rank, 0);
  r.at(i) = 1;
  return r;
}

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw ConstraintError("dimension mismatch");
}

}  // namespace

RootVec operator+(const RootVec& a, const RootVec& b) {
  check_sizes(a.size(), b.size());
  RootVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RootVec operator-(const RootVec& a, const RootVec& b) {
  check_sizes(a.size(), b.size());
  RootVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

RootVec operator-(const RootVec& a) {
  RootVec r(a);
  for (auto& x : r) x = -x;
  return r;
}

RootVec operator*(int k, const RootVec& a) {
  RootVec r(a);
  for (auto& x : r) x *= k;
  return r;
}

int tr(const RootVec& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool is_zero(const RootVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

bool is_nonnegative(const RootVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

Weight to_weight(const RootVec& a) { return Weight(a.begin(), a.end()); }

std::optional<RootVec> to_rootvec(const Weight& w) {
  RootVec r;
  for (const auto& x : w) {
    if (x.get_den() != 1 || !x.get_num().fits_sint_p()) return std::nullopt;
    r.push_back(static_cast<int>(x.get_num().get_si()));
  }
  return r;
}

namespace {

template <class T>
std::string render_coords(const std::vector<T>& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    T c = a[i];
    if (c < 0) {
      os << "-";
      c = -c;
    } else if (!first) {
      os << "+";
    }
    if (c != 1) os << c << "*";
    os << "a" << (i + 1);
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string render_rootvec(const RootVec& a) { return render_coords(a); }
std::string render_weight(const Weight& w) { return render_coords(w); }

CartanDatum::CartanDatum(std::vector<std::vector<int>> omega, std::string name)
    : omega_(std::move(omega)), name_(std::move(name)) {
  const std::size_t n = omega_.size();
  if (n == 0) throw ConstraintError("Cartan datum needs rank >= 1");
  int g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (omega_[i].size() != n) throw ConstraintError("Omega must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (omega_[i][i] <= 0) throw ConstraintError("Omega_ii must be positive");
    g = std::gcd(g, omega_[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (omega_[i][j] > 0) throw ConstraintError("Omega_ij must be <= 0 for i != j");
      const int s = omega_[i][j] + omega_[j][i];
      if (s % omega_[i][i] != 0) throw ConstraintError("(Omega_ij + Omega_ji)/Omega_ii must be an integer");
    }
  }
  if (g != 1) throw ConstraintError("gcd of the Omega_ii must be 1");

  // Positive roots as the W-orbit of the simple roots, when that is finite.
  std::set<RootVec> roots;
  std::deque<RootVec> queue;
  for (std::size_t i = 0; i < n; ++i) {
    roots.insert(unit_vec(n, i));
    queue.push_back(unit_vec(n, i));
  }
  finite_ = true;
  while (!queue.empty()) {
    RootVec r = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      RootVec s = reflect(i, r);
      if (roots.insert(s).second) {
        if (roots.size() > 4096 || std::any_of(s.begin(), s.end(), [](int x) { return std::abs(x) > 64; })) {
          finite_ = false;
          queue.clear();
          break;
        }
        queue.push_back(s);
      }
    }
  }
  if (finite_) {
    for (const auto& r : roots) {
      if (is_nonnegative(r)) positive_roots_.push_back(r);
    }
    std::sort(positive_roots_.begin(), positive_roots_.end(), [](const RootVec& a, const RootVec& b) {
      return tr(a) != tr(b) ? tr(a) < tr(b) : a > b;
    });
  }
}

CartanDatum CartanDatum::preset(const std::string& type) {
  if (type.size() < 2 || (type[0] != 'A' && type[0] != 'a')) {
    throw ConstraintError("unknown type '" + type + "' (expected A1..A9)");
  }
  int n = 0;
  try {
    n = std::stoi(type.substr(1));
  } catch (const std::exception&) {
    throw ConstraintError("unknown type '" + type + "'");
  }
  if (n < 1 || n > 9) throw ConstraintError("type rank out of range: " + type);
  std::vector<std::vector<int>> omega(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    omega[i][i] = 1;
    if (i + 1 < n) omega[i][i + 1] = -1;
  }
  return CartanDatum(std::move(omega), "A" + std::to_string(n));
}

bool CartanDatum::symmetric_type() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (omega_[i][i] != 1) return false;
  }
  return true;
}

void CartanDatum::require_symmetric_type() const {
  if (!symmetric_type()) throw ConstraintError("algebras are only instantiated for Omega of symmetric type");
  if (!finite_) throw ConstraintError("Cartan datum is not of finite type");
}

CartanDatum CartanDatum::one_parameter() const {
  CartanDatum d = *this;
  d.t_free_ = true;
  d.name_ += "[t=1]";
  return d;
}

int CartanDatum::angle(const RootVec& a, const RootVec& b) const {
  check_sizes(a.size(), rank());
  check_sizes(b.size(), rank());
  int s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += a[i] * b[j] * omega_[i][j];
  }
  return s;
}

int CartanDatum::square(const RootVec& a, const RootVec& b) const {
  check_sizes(a.size(), rank());
  check_sizes(b.size(), rank());
  int s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) {
      const int sq = (i == j ? 2 * omega_[i][i] : 0) - omega_[i][j];
      s += a[i] * b[j] * sq;
    }
  }
  return s;
}

int CartanDatum::dot(const RootVec& a, const RootVec& b) const { return angle(a, b) + angle(b, a); }

int CartanDatum::skew(const RootVec& a, const RootVec& b) const { return angle(a, b) - angle(b, a); }

int CartanDatum::form(FormKind kind, const RootVec& a, const RootVec& b) const {
  switch (kind) {
    case FormKind::angle:
      return angle(a, b);
    case FormKind::square:
      return square(a, b);
    case FormKind::dot:
      return dot(a, b);
  }
  throw InvariantError("unknown form kind");
}

mpq_class CartanDatum::dot(const Weight& a, const Weight& b) const {
  check_sizes(a.size(), rank());
  check_sizes(b.size(), rank());
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += a[i] * b[j] * dot(i, j);
  }
  return s;
}

mpq_class CartanDatum::skew(const Weight& a, const Weight& b) const {
  check_sizes(a.size(), rank());
  check_sizes(b.size(), rank());
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += a[i] * b[j] * (omega_[i][j] - omega_[j][i]);
  }
  return s;
}

int CartanDatum::half_norm(std::size_t i) const { return omega_[i][i]; }

bool CartanDatum::in_weight_lattice(const Weight& w) const {
  for (const auto& c : to_fundamental(w)) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

bool CartanDatum::is_dominant(const Weight& w) const {
  for (const auto& c : to_fundamental(w)) {
    if (c < 0) return false;
  }
  return true;
}

std::vector<mpq_class> CartanDatum::to_fundamental(const Weight& w) const {
  check_sizes(w.size(), rank());
  std::vector<mpq_class> out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < rank(); ++j) s += w[j] * dot(j, i);
    out[i] = s / dot(i, i) * 2;
  }
  return out;
}

Weight CartanDatum::from_fundamental(const std::vector<mpq_class>& c) const {
  check_sizes(c.size(), rank());
  const std::size_t n = rank();
  // Solve sum_j w_j (2 j.i / i.i) = c_i.
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpq_class(2 * dot(j, i)) / dot(i, i);
    m[i][n] = c[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) throw ConstraintError("degenerate Cartan matrix");
    std::swap(m[p], m[col]);
    const mpq_class inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const mpq_class f = m[r][col];
      for (std::size_t k = 0; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  Weight w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = m[i][n];
  return w;
}

const std::vector<RootVec>& CartanDatum::positive_roots() const {
  if (!finite_) throw ConstraintError("Cartan datum is not of finite type");
  return positive_roots_;
}

Weight CartanDatum::rho() const {
  Weight r(rank(), 0);
  for (const auto& a : positive_roots()) {
    for (std::size_t i = 0; i < rank(); ++i) r[i] += mpq_class(a[i]) / 2;
  }
  return r;
}

Weight CartanDatum::reflect(std::size_t i, const Weight& w) const {
  mpq_class c = 0;
  for (std::size_t j = 0; j < rank(); ++j) c += w[j] * dot(j, i);
  c = c * 2 / dot(i, i);
  Weight r = w;
  r[i] -= c;
  return r;
}

RootVec CartanDatum::reflect(std::size_t i, const RootVec& a) const {
  int c = 0;
  for (std::size_t j = 0; j < rank(); ++j) c += a[j] * dot(j, i);
  c = c * 2 / dot(i, i);
  RootVec r = a;
  r[i] -= c;
  return r;
}

Weight CartanDatum::dominant_conjugate(const Weight& w) const {
  Weight cur = w;
  for (int guard = 0; guard < 100000; ++guard) {
    const auto f = to_fundamental(cur);
    std::size_t i = 0;
    while (i < rank() && f[i] >= 0) ++i;
    if (i == rank()) return cur;
    cur = reflect(i, cur);
  }
  throw ConstraintError("Cartan datum is not of finite type");
}

mpq_class apply(const std::vector<std::vector<int>>& m, const Weight& w, std::size_t row) {
  mpq_class s = 0;
  for (std::size_t j = 0; j < w.size(); ++j) s += m[row][j] * w[j];
  return s;
}

Weight apply(const std::vector<std::vector<int>>& m, const Weight& w) {
  Weight r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[i] = apply(m, w, i);
  return r;
}

RootVec apply(const std::vector<std::vector<int>>& m, const RootVec& a) {
  RootVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) r[i] += m[i][j] * a[j];
  }
  return r;
}

WeylGroup CartanDatum::weyl_group(std::size_t bound) const {
  const std::size_t n = rank();
  std::vector<std::vector<std::vector<int>>> gens(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      m[j][j] = 1;
      m[i][j] -= 2 * dot(j, i) / dot(i, i);
    }
    gens[i] = std::move(m);
  }
  WeylGroup g;
  std::vector<std::vector<int>> id(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::map<std::vector<std::vector<int>>, std::size_t> seen;
  seen[id] = 0;
  g.elements.push_back({{}, id});
  for (std::size_t k = 0; k < g.elements.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& cur = g.elements[k].matrix;
      std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          for (std::size_t l = 0; l < n; ++l) m[r][c] += gens[i][r][l] * cur[l][c];
        }
      }
      if (seen.count(m)) continue;
      if (g.elements.size() >= bound) throw ConstraintError("Weyl group exceeds bound: not finite type");
      std::vector<int> word = g.elements[k].word;
      word.insert(word.begin(), static_cast<int>(i));
      seen.emplace(m, g.elements.size());
      g.elements.push_back({std::move(word), std::move(m)});
    }
  }
  return g;
}

std::map<Weight, int> CartanDatum::weight_multiplicities(const Weight& lambda) const {
  check_sizes(lambda.size(), rank());
  if (!in_weight_lattice(lambda) || !is_dominant(lambda)) {
    throw ConstraintError("weight multiplicities need a dominant integral weight");
  }
  const auto& pos = positive_roots();
  const Weight r = rho();
  Weight lr = lambda;
  for (std::size_t i = 0; i < rank(); ++i) lr[i] += r[i];
  const mpq_class top = dot(lr, lr);

  auto below = [&](const Weight& mu) {
    for (std::size_t i = 0; i < rank(); ++i) {
      const mpq_class d = lambda[i] - mu[i];
      if (d < 0 || d.get_den() != 1) return false;
    }
    return true;
  };

  std::map<Weight, int> memo;
  std::function<int(const Weight&)> mult = [&](const Weight& w) -> int {
    const Weight mu = dominant_conjugate(w);
    if (!below(mu)) return 0;
    if (mu == lambda) return 1;
    if (auto it = memo.find(mu); it != memo.end()) return it->second;
    mpq_class sum = 0;
    for (const auto& a : pos) {
      const Weight aw = to_weight(a);
      Weight cur = mu;
      for (int k = 1;; ++k) {
        for (std::size_t i = 0; i < rank(); ++i) cur[i] += aw[i];
        if (!below(cur)) break;
        const int m = mult(cur);
        if (m != 0) sum += m * dot(cur, aw);
      }
    }
    Weight mr = mu;
    for (std::size_t i = 0; i < rank(); ++i) mr[i] += r[i];
    const mpq_class value = 2 * sum / (top - dot(mr, mr));
    if (value.get_den() != 1) throw InvariantError("Freudenthal recursion produced a non-integer");
    const int m = static_cast<int>(value.get_num().get_si());
    memo[mu] = m;
    return m;
  };

  // Enumerate lambda - nu for nu in Q^+ with a positive multiplicity.
  std::map<Weight, int> out;
  std::set<Weight> visited;
  std::deque<Weight> queue{lambda};
  visited.insert(lambda);
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    const int m = mult(mu);
    if (m == 0) continue;
    out[mu] = m;
    for (std::size_t i = 0; i < rank(); ++i) {
      Weight next = mu;
      next[i] -= 1;
      if (visited.insert(next).second) queue.push_back(next);
    }
  }
  return out;
}

mpq_class CartanDatum::weyl_dimension(const Weight& lambda) const {
  const Weight r = rho();
  Weight lr = lambda;
  for (std::size_t i = 0; i < rank(); ++i) lr[i] += r[i];
  mpq_class d = 1;
  for (const auto& a : positive_roots()) {
    const Weight aw = to_weight(a);
    d *= dot(lr, aw) / dot(r, aw);
  }
  return d;
}

std::vector<RootVec> CartanDatum::antisym_kernel() const {
  const std::size_t n = rank();
  // Column reduction A U = H with U unimodular; zero columns of H give the kernel.
  std::vector<std::vector<long>> a(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = omega_[i][j] - omega_[j][i];
  }
  std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_sub = [&](std::size_t dst, std::size_t src, long f) {
    for (std::size_t r = 0; r < n; ++r) {
      a[r][dst] -= f * a[r][src];
      u[r][dst] -= f * u[r][src];
    }
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(a[r][x], a[r][y]);
      std::swap(u[r][x], u[r][y]);
    }
  };
  std::size_t k = 0;
  for (std::size_t r = 0; r < n && k < n; ++r) {
    while (true) {
      std::size_t best = n;
      for (std::size_t c = k; c < n; ++c) {
        if (a[r][c] != 0 && (best == n || std::labs(a[r][c]) < std::labs(a[r][best]))) best = c;
      }
      if (best == n) break;
      col_swap(k, best);
      bool done = true;
      for (std::size_t c = k + 1; c < n; ++c) {
        if (a[r][c] == 0) continue;
        col_sub(c, k, a[r][c] / a[r][k]);
        if (a[r][c] != 0) done = false;
      }
      if (done) {
        ++k;
        break;
      }
    }
  }
  std::vector<RootVec> basis;
  for (std::size_t c = k; c < n; ++c) {
    RootVec v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = static_cast<int>(u[r][c]);
    // Sign convention: first nonzero coordinate positive.
    auto it = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (it != v.end() && *it < 0) v = -v;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RootVec> CartanDatum::parity_lift(const RootVec& eta) const {
  check_sizes(eta.size(), rank());
  int mx = 0;
  for (int x : eta) mx = std::max(mx, std::abs(x));
  const int box = 2 * mx + 4;
  const std::size_t n = rank();
  std::optional<RootVec> best_dominant;
  std::optional<RootVec> best_any;
  auto key = [](const RootVec& y) {
    int s = 0;
    for (int x : y) s += std::abs(x);
    return s;
  };
  RootVec y(n, -box);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = ((y[i] - eta[i]) % 2 == 0);
    if (ok) {
      bool dominant = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        int s = 0;
        for (std::size_t j = 0; j < n; ++j) s += y[j] * dot(j, i);
        if (s % 2 != 0) ok = false;
        if (s < 0) dominant = false;
      }
      if (ok) {
        auto better = [&](const std::optional<RootVec>& cur) {
          if (!cur) return true;
          const int a = key(y);
          const int b = key(*cur);
          return a != b ? a < b : y < *cur;
        };
        if (dominant && better(best_dominant)) best_dominant = y;
        if (better(best_any)) best_any = y;
      }
    }
    std::size_t i = 0;
    while (i < n && y[i] == box) y[i++] = -box;
    if (i == n) break;
    ++y[i];
  }
  return best_dominant ? best_dominant : best_any;
}

}  // namespace uvt
