#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uvt/centre.hpp"
#include "uvt/error.hpp"
#include "uvt/expr.hpp"
#include "uvt/freealg.hpp"
#include "uvt/module.hpp"
#include "uvt/pairing.hpp"
#include "uvt/star.hpp"

using json = nlohmann::ordered_json;
using namespace uvt;

namespace {

enum class Format { text, json, latex };

struct Session {
  std::string type = "A1";
  std::string omega;
  int depth = 4;
  std::string star_sign = "flipped";
  std::string format = "text";
  unsigned seed = 1;

  Format fmt() const { return format == "json" ? Format::json : format == "latex" ? Format::latex : Format::text; }
  StarSign sign() const { return star_sign == "printed" ? StarSign::printed : StarSign::flipped; }
};

CartanDatum make_datum(const Session& s) {
  if (s.omega.empty()) return CartanDatum::preset(s.type);
  std::vector<std::vector<int>> rows;
  std::stringstream all(s.omega);
  std::string row;
  while (std::getline(all, row, ';')) {
    std::vector<int> r;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stoi(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw ConstraintError("bad Omega entry '" + cell + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  return CartanDatum(std::move(rows), "custom");
}

// "a1+2*a2", "a" (rank 1), "w1" (fundamental), or "1,1" / "1/2,1" in root coordinates.
Weight parse_weight(const CartanDatum& d, const std::string& text) {
  const std::size_t n = d.rank();
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw ConstraintError("empty weight");
  if (s.find('a') == std::string::npos && s.find('w') == std::string::npos) {
    Weight w;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        w.emplace_back(cell);
      } catch (const std::invalid_argument&) {
        throw ConstraintError("bad weight coordinate '" + cell + "'");
      }
      w.back().canonicalize();
    }
    if (w.size() != n) throw ConstraintError("weight needs " + std::to_string(n) + " coordinates");
    return w;
  }
  Weight root(n, 0);
  std::vector<mpq_class> fund(n, 0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') sign = s[pos++] == '-' ? -1 : 1;
    std::size_t end = pos;
    while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/')) ++end;
    mpq_class coef = 1;
    if (end > pos) {
      coef = mpq_class(s.substr(pos, end - pos));
      coef.canonicalize();
      pos = end;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos >= s.size() || (s[pos] != 'a' && s[pos] != 'w')) {
      throw ConstraintError("weight term needs a or w at position " + std::to_string(pos));
    }
    const char kind = s[pos++];
    end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    std::size_t i = 0;
    if (end == pos) {
      if (n != 1) throw ConstraintError("bare 'a' or 'w' only in rank 1");
    } else {
      i = std::stoul(s.substr(pos, end - pos));
      if (i < 1 || i > n) throw ConstraintError("index out of range in weight");
      --i;
    }
    pos = end;
    (kind == 'a' ? root : fund)[i] += sign * coef;
  }
  const Weight f = d.from_fundamental(fund);
  for (std::size_t i = 0; i < n; ++i) root[i] += f[i];
  return root;
}

std::string omega_string(const CartanDatum& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.rank(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < d.rank(); ++j) s += (j ? "," : "") + std::to_string(d.omega()[i][j]);
    s += "]";
  }
  return s + "]";
}

json omega_json(const CartanDatum& d) {
  json a = json::array();
  for (const auto& r : d.omega()) a.push_back(r);
  return a;
}

// Output sink: header first, then key/value lines (text, latex) or one JSON object.
class Report {
 public:
  Report(const Session& s, const CartanDatum& d, std::string command) : fmt_(s.fmt()) {
    session_ = {{"command", command}, {"type", d.name()}, {"omega", omega_json(d)}, {"depth", s.depth},
                {"star_sign", s.star_sign}, {"seed", s.seed}};
    if (fmt_ != Format::json) {
      const char* c = fmt_ == Format::latex ? "%" : "#";
      std::cout << c << " uvt " << command << "  type " << d.name() << "  omega " << omega_string(d) << "  depth "
                << s.depth << "  star-sign " << s.star_sign << "  seed " << s.seed << "\n";
    }
  }

  void line(const std::string& key, const json& value, const std::string& shown) {
    body_[key] = value;
    if (fmt_ != Format::json) std::cout << key << ": " << shown << "\n";
  }
  void line(const std::string& key, const std::string& value) { line(key, value, value); }
  void line(const std::string& key, bool value) { line(key, value, value ? "yes" : "no"); }

  std::string element(const UElement& u) const { return fmt_ == Format::latex ? render_latex(u) : render(u); }

  void finish() {
    if (fmt_ == Format::json) {
      json out{{"session", session_}};
      for (auto& [k, v] : body_.items()) out[k] = v;
      std::cout << out.dump(2) << "\n";
    }
  }

  Format format() const { return fmt_; }

 private:
  Format fmt_;
  json session_;
  json body_ = json::object();
};

json rootvec_json(const RootVec& r) { return json(r); }

json weight_json(const Weight& w) {
  json a = json::array();
  for (const auto& x : w) a.push_back(x.get_str());
  return a;
}

std::string cartan_string(const CartanElement& x, Format f) {
  if (f != Format::latex) return render(x);
  UElement u;
  for (const auto& [k, c] : x.terms()) u.add(Monomial{{}, k.second, k.first, {}}, c);
  return render_latex(u);
}

std::vector<int> parse_index_set(const std::string& s, std::size_t n) {
  std::vector<int> J;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    const int i = std::stoi(cell);
    if (i < 1 || static_cast<std::size_t>(i) > n) throw ConstraintError("index " + cell + " out of range");
    J.push_back(i - 1);
  }
  return J;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact computations in two-parameter quantum groups U_{v,t}"};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  app.add_option("--type", s.type, "Preset Cartan type A1..A9")->capture_default_str();
  app.add_option("--omega", s.omega, "Custom Omega, rows separated by ';', e.g. \"1,-1;0,1\"");
  app.add_option("--depth", s.depth, "Truncation bound (Verma depth, criterion window)")->capture_default_str();
  app.add_option("--star-sign", s.star_sign, "Sign convention of the twisted product")
      ->check(CLI::IsMember({"printed", "flipped"}))
      ->capture_default_str();
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}))->capture_default_str();
  app.add_option("--seed", s.seed, "Seed for randomized checks")->capture_default_str();

  std::string expr, expr2, form = "skew", cartan_sign = "compatible", lambda, jset;
  int index = 1;
  bool verma = false, show = false;

  auto* nf = app.add_subcommand("nf", "Triangular normal form of an expression");
  nf->add_option("expr", expr, "Expression, e.g. \"E1*F1\"")->required();
  auto* pair = app.add_subcommand("pair", "Skew pairing (x in U^{<=0}, y in U^{>=0}) or the ad-invariant form");
  pair->add_option("x", expr)->required();
  pair->add_option("y", expr2)->required();
  pair->add_option("--form", form)->check(CLI::IsMember({"skew", "ad"}))->capture_default_str();
  pair->add_option("--cartan-sign", cartan_sign, "t-sign of (K'_mu, K_nu)")
      ->check(CLI::IsMember({"compatible", "printed"}))
      ->capture_default_str();
  auto* comm = app.add_subcommand("comm", "Commutator xy - yx");
  comm->add_option("x", expr)->required();
  comm->add_option("y", expr2)->required();
  auto* xi = app.add_subcommand("xi", "Harish-Chandra image");
  xi->add_option("expr", expr)->required();
  auto* zl = app.add_subcommand("z-lambda", "Central element z_lambda and its Harish-Chandra image");
  zl->add_option("--lambda", lambda, "Dominant weight in the root lattice, e.g. a1+a2")->required();
  zl->add_flag("--show", show, "Print the element itself");
  auto* crit = app.add_subcommand("criterion", "Antisymmetric kernel and central elements of degree (eta, eta)");
  auto* cas = app.add_subcommand("casimir", "Rank-1 Casimir element Y_i");
  cas->add_option("--index", index)->capture_default_str();
  auto* uji = app.add_subcommand("uji", "Centre of the rank-1 Levi piece U_{J_i}");
  uji->add_option("--index", index)->capture_default_str();
  uji->add_option("--lambda", lambda, "Weights for the Im(xi) check, ';'-separated");
  auto* dec = app.add_subcommand("decompose", "Split an element along U = U_J + R_J");
  dec->add_option("expr", expr)->required();
  dec->add_option("--J", jset, "Comma-separated 1-based indices")->required();
  auto* serre = app.add_subcommand("serre-check", "Serre elements lie in the radical and vanish in U");
  auto* star = app.add_subcommand("star-check", "Defining relations under the twisted product");
  auto* dump = app.add_subcommand("module-dump", "Weight spaces and generator matrices of a module");
  dump->add_option("--lambda", lambda)->required();
  dump->add_flag("--verma", verma, "Truncated Verma module of depth --depth instead of L(lambda)");
  (void)dec;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const CartanDatum datum = make_datum(s);
  const Algebra alg(datum);
  const Pairing pairing(alg);
  const std::size_t n = datum.rank();
  const StarSign sign = s.sign();

  if (nf->parsed()) {
    Report r(s, datum, "nf");
    const UElement u = parse_element(alg, expr, sign);
    r.line("input", expr);
    r.line("normal form", render(u), r.element(u));
    r.finish();
  } else if (pair->parsed()) {
    Report r(s, datum, "pair");
    const UElement x = parse_element(alg, expr, sign);
    const UElement y = parse_element(alg, expr2, sign);
    const Pairing pp(alg, cartan_sign == "printed" ? CartanSign::printed : CartanSign::compatible);
    const Scalar value = form == "skew" ? pp.skew_pair(x, y) : pp.ad_form(x, y);
    r.line("form", form);
    r.line("cartan sign", cartan_sign);
    r.line("value", value.to_string(), r.format() == Format::latex ? value.to_latex() : value.to_string());
    r.finish();
  } else if (comm->parsed()) {
    Report r(s, datum, "comm");
    const UElement c = alg.commutator(parse_element(alg, expr, sign), parse_element(alg, expr2, sign));
    r.line("commutator", render(c), r.element(c));
    r.finish();
  } else if (xi->parsed()) {
    Report r(s, datum, "xi");
    const CartanElement x = hc_xi(alg, parse_element(alg, expr, sign));
    r.line("input", expr);
    r.line("xi", render(x), cartan_string(x, r.format()));
    r.finish();
  } else if (zl->parsed()) {
    Report r(s, datum, "z-lambda");
    const Weight l = parse_weight(datum, lambda);
    const CentralCandidate z = z_lambda(pairing, l);
    const CartanElement img = hc_xi(alg, z.element);
    const CartanElement oracle = hc_image_of_trace(datum, l);
    r.line("lambda", weight_json(l), render_weight(l));
    r.line("central", z.certified);
    r.line("terms", json(z.element.size()), std::to_string(z.element.size()));
    r.line("xi", render(img), cartan_string(img, r.format()));
    r.line("cartan terms", json(img.terms().size()), std::to_string(img.terms().size()));
    r.line("matches multiplicities", img == oracle);
    bool invariant = img.in_flat();
    for (const auto& w : datum.weyl_group().elements) invariant = invariant && weyl_on_flat(w, img) == img;
    r.line("weyl invariant", invariant);
    if (show) r.line("element", render(z.element), r.element(z.element));
    r.finish();
    return z.certified && img == oracle ? 0 : 2;
  } else if (crit->parsed()) {
    Report r(s, datum, "criterion");
    CriterionWindow w;
    w.eta_norm = s.depth;
    const CriterionReport rep = criterion(alg, w);
    json kernel = json::array();
    std::string ks = "[";
    for (const auto& k : rep.kernel_basis) {
      kernel.push_back(render_rootvec(k));
      ks += (ks.size() > 1 ? ", " : "") + render_rootvec(k);
    }
    r.line("kernel_basis", kernel, ks + "]");
    json cert = json::array();
    std::string cs;
    for (const auto& [name, u] : rep.certified) {
      cert.push_back({{"name", name}, {"element", render(u)}});
      cs += (cs.empty() ? "" : ", ") + name;
    }
    r.line("certified_elements", cert, cs.empty() ? "none" : cs);
    json bounds{{"eta_norm", w.eta_norm}, {"max_tr", w.max_tr}, {"cartan_box", w.box}, {"degrees_solved", rep.solves.size()}};
    std::size_t unknowns = 0;
    for (const auto& d : rep.solves) unknowns += d.unknowns;
    bounds["unknowns"] = unknowns;
    std::ostringstream bs;
    bs << "sum|eta_i| <= " << w.eta_norm << ", tr(nu) <= " << w.max_tr << ", |a_i| <= " << w.box << ", "
       << rep.solves.size() << " degrees solved";
    r.line("window_bounds", bounds, bs.str());
    r.line("counterexamples", json(rep.counterexamples), rep.counterexamples.empty() ? "none" : std::to_string(rep.counterexamples.size()));
    for (const auto& c : rep.counterexamples) {
      if (r.format() != Format::json) std::cout << "  " << c << "\n";
    }
    r.finish();
    return rep.ok ? 0 : 2;
  } else if (cas->parsed()) {
    Report r(s, datum, "casimir");
    if (index < 1 || static_cast<std::size_t>(index) > n) throw ConstraintError("index out of range");
    const UElement y = casimir(alg, index - 1);
    r.line("Y", render(y), r.element(y));
    r.line("central in rank-1 piece", is_central_in(alg, {index - 1}, y));
    r.line("central", is_central(alg, y));
    r.finish();
  } else if (uji->parsed()) {
    Report r(s, datum, "uji");
    if (index < 1 || static_cast<std::size_t>(index) > n) throw ConstraintError("index out of range");
    std::vector<Weight> lambdas;
    std::stringstream ls(lambda);
    std::string one;
    while (std::getline(ls, one, ';')) {
      if (!one.empty()) lambdas.push_back(parse_weight(datum, one));
    }
    const UJiReport rep = centre_UJi_check(pairing, index - 1, lambdas);
    r.line("X central", rep.x_central);
    r.line("Y central", rep.y_central);
    r.line("Y forms agree", rep.y_forms_agree);
    json cert = json::array();
    for (std::size_t k = 0; k < rep.condition_elements.size(); ++k) {
      cert.push_back({{"cartan", render(rep.condition_elements[k].first)}, {"k", rep.condition_elements[k].second}});
    }
    r.line("certified_elements", cert, std::to_string(rep.certified.size()) + " products K_x K'_y K_i^-k Y");
    json checks = json::array();
    std::string cs;
    for (const auto& [l, ok] : rep.image_checks) {
      checks.push_back({{"lambda", l}, {"ok", ok}});
      cs += (cs.empty() ? "" : ", ") + l + (ok ? " ok" : " FAILED");
    }
    r.line("image_checks", checks, cs.empty() ? "none" : cs);
    r.line("window_bounds", json{{"cartan_box", 1}}, "|x_j|, |y_j| <= 1");
    r.line("counterexamples", json(rep.counterexamples), rep.counterexamples.empty() ? "none" : std::to_string(rep.counterexamples.size()));
    r.finish();
    return rep.ok ? 0 : 2;
  } else if (dec->parsed()) {
    Report r(s, datum, "decompose");
    const auto [a, b] = decompose_UJ(pairing, parse_index_set(jset, n), parse_element(alg, expr, sign));
    r.line("U_J part", render(a), r.element(a));
    r.line("R_J part", render(b), r.element(b));
    r.finish();
  } else if (serre->parsed()) {
    Report r(s, datum, "serre-check");
    bool all = true;
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const FreeElement x = alg.free().serre_element(static_cast<int>(i), static_cast<int>(j));
        bool radical = true;
        for (const auto& [w, c] : x.terms()) {
          for (const Word& u : alg.free().words_of_degree(word_degree(w, n))) {
            radical = radical && alg.free().pairing(x, FreeElement(u)).is_zero();
          }
          break;
        }
        const bool e_zero = alg.from_theta_E(x).is_zero();
        const bool f_zero = alg.from_theta_F(x).is_zero();
        all = all && radical && e_zero && f_zero;
        const std::string name = std::to_string(i + 1) + "," + std::to_string(j + 1);
        rows.push_back({{"pair", name}, {"radical", radical}, {"E_image_zero", e_zero}, {"F_image_zero", f_zero}});
        if (r.format() != Format::json) {
          std::cout << "serre " << name << ": radical " << (radical ? "yes" : "no") << ", E-image "
                    << (e_zero ? "0" : "nonzero") << ", F-image " << (f_zero ? "0" : "nonzero") << "\n";
        }
      }
    }
    r.line("all", json(all), all ? "pass" : "FAIL");
    if (r.format() == Format::json) r.line("pairs", rows, "");
    r.finish();
    return all ? 0 : 2;
  } else if (star->parsed()) {
    Report r(s, datum, "star-check");
    json rows = json::array();
    std::size_t failing = 0;
    for (const auto& rel : star_relations(alg, sign)) {
      failing += !rel.one_parameter;
      rows.push_back({{"relation", rel.name}, {"one_parameter", rel.one_parameter}, {"residual_t", rel.residual_t}});
      if (r.format() != Format::json && !rel.one_parameter) {
        std::cout << "  " << rel.name << ": residual t-exponents";
        for (int e : rel.residual_t) std::cout << " " << e;
        std::cout << "\n";
      }
    }
    // Associativity of * on seeded random monomials.
    std::mt19937 rng(s.seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(4 * n) - 1);
    auto gen = [&] {
      const int k = pick(rng);
      const int i = k / 4;
      switch (k % 4) {
        case 0: return alg.E(i);
        case 1: return alg.F(i);
        case 2: return alg.K(i);
        default: return alg.Kp(i, -1);
      }
    };
    bool assoc = true;
    for (int k = 0; k < 20; ++k) {
      const UElement a = alg.multiply(gen(), gen()), b = gen(), c = alg.multiply(gen(), gen());
      assoc = assoc && alg.star_multiply(alg.star_multiply(a, b, sign), c, sign) ==
                           alg.star_multiply(a, alg.star_multiply(b, c, sign), sign);
    }
    r.line("relations", json(rows.size()), std::to_string(rows.size()));
    r.line("with residual t", json(failing), std::to_string(failing));
    r.line("associative", assoc);
    if (r.format() == Format::json) r.line("details", rows, "");
    r.finish();
  } else if (dump->parsed()) {
    Report r(s, datum, "module-dump");
    const Weight l = parse_weight(datum, lambda);
    const WeightModule m = verma ? verma_truncated(alg, l, s.depth) : simple_module(alg, l);
    r.line("lambda", weight_json(l), render_weight(l));
    r.line("kind", verma ? "verma (truncated)" : "simple");
    r.line("dim", json(m.dim()), std::to_string(m.dim()));
    json spaces = json::array();
    for (const auto& sp : m.spaces()) {
      json labels = json::array();
      for (const auto& w : sp.labels) labels.push_back(render_word(w, "F"));
      spaces.push_back({{"weight", weight_json(sp.weight)}, {"depth", rootvec_json(sp.depth)}, {"dim", sp.dim}, {"basis", labels}});
      if (r.format() != Format::json) {
        std::cout << "  weight " << render_weight(sp.weight) << "  dim " << sp.dim << "\n";
      }
    }
    auto matrix_json = [](const ScalarMatrix& a) {
      json out = json::array();
      for (const auto& row : a) {
        json jr = json::array();
        for (const auto& x : row) jr.push_back(x.to_string());
        out.push_back(jr);
      }
      return out;
    };
    json gens = json::object();
    for (std::size_t i = 0; i < n; ++i) {
      const int ii = static_cast<int>(i);
      gens["E" + std::to_string(i + 1)] = matrix_json(m.E(ii));
      gens["F" + std::to_string(i + 1)] = matrix_json(m.F(ii));
      gens["K" + std::to_string(i + 1)] = matrix_json(m.K(ii));
      gens["K" + std::to_string(i + 1) + "'"] = matrix_json(m.Kp(ii));
    }
    if (r.format() == Format::json) {
      r.line("spaces", spaces, "");
      r.line("generators", gens, "");
    }
    r.finish();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
