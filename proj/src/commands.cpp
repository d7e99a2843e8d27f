#include "qflag/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "qflag/decomp.hpp"
#include "qflag/errors.hpp"
#include "qflag/flags.hpp"
#include "qflag/hp1geom.hpp"
#include "qflag/multivector.hpp"
#include "qflag/sampling.hpp"

namespace qflag::cli {

namespace {

CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return {kUsage, "", e.what()};
  } catch (const PreconditionError& e) {
    return {kUsage, "", e.what()};
  } catch (const SingularMatrixError& e) {
    return {kFailure, "", e.what()};
  } catch (const ChartBoundaryError& e) {
    return {kFailure, "", e.what()};
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Checks {
 public:
  void at_most(const std::string& name, double value, double tol) {
    add(name, value, tol, value <= tol, "<=");
  }
  void above(const std::string& name, double value, double tol) {
    add(name, value, tol, value > tol, ">");
  }
  void equal(const std::string& name, int value, int expected) {
    items_.push_back({{"name", name}, {"value", value}, {"expected", expected},
                      {"pass", value == expected}});
    ok_ = ok_ && value == expected;
  }
  void flag(const std::string& name, bool value) {
    items_.push_back({{"name", name}, {"value", value}, {"pass", value}});
    ok_ = ok_ && value;
  }

  CommandResult report(const std::string& suite, int n, std::uint64_t seed) const {
    const json j = {{"kind", "verify"}, {"suite", suite}, {"n", n},
                    {"seed", seed},     {"pass", ok_},    {"checks", items_}};
    return {ok_ ? kPass : kFailure, dump(j), ok_ ? "" : "verification failed"};
  }

 private:
  void add(const std::string& name, double value, double tol, bool pass, const char* rel) {
    items_.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"relation", rel},
                      {"pass", pass}});
    ok_ = ok_ && pass;
  }

  json items_ = json::array();
  bool ok_ = true;
};

const std::vector<double> kRhoGrid = {0.1, 0.25, 0.5, 1.0, 2.0, 3.0};

void suite_schouten(Checks& c, int n, Rng& rng, const Config& cfg) {
  const double tol = tolerance(cfg, "schouten");
  const int trials = n == 2 ? 20 : 5;
  std::uniform_int_distribution<int> grade(1, 3);
  double anti = 0.0;
  double leib = 0.0;
  double jac = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Multivector p = random_multivector(n, grade(rng), 3, rng);
    const Multivector q = random_multivector(n, grade(rng), 3, rng);
    const Multivector r = random_multivector(n, grade(rng), 3, rng);
    anti = std::max(anti, antisymmetry_residual(p, q));
    leib = std::max(leib, leibniz_residual(p, q, r));
    jac = std::max(jac, jacobi_residual(p, q, r));
  }
  c.at_most("antisymmetry", anti, tol);
  c.at_most("leibniz", leib, tol);
  c.at_most("jacobi", jac, tol);
}

void suite_lambda(Checks& c, int n, const Config& cfg) {
  const Multivector lam = lambda_element(n);
  const double m = schouten(lam, lam).max_abs();
  if (n == 2) {
    c.at_most("self_bracket_vanishes", m, tolerance(cfg, "lambda_zero"));
  } else {
    c.above("self_bracket_nonzero", m, tolerance(cfg, "lambda_nonzero"));
  }
}

void suite_spheroid(Checks& c, int n, Rng& rng, const Config& cfg) {
  const double tol = tolerance(cfg, "spheroid");
  const Multivector lam = lambda_element(n);
  double inf = 0.0;
  for (int t = 0; t < 50; ++t) {
    inf = std::max(inf, ad_multivector(random_spheroid_element(n, rng), lam).max_abs());
  }
  double grp = 0.0;
  for (int t = 0; t < 10; ++t) grp = std::max(grp, max_abs_diff(ad_group(random_spheroid(n, rng), lam), lam));
  c.at_most("ad_X_lambda", inf, tol);
  c.at_most("Ad_sigma_lambda", grp, tol);
}

void suite_hp1(Checks& c, Rng& rng, const Config& cfg) {
  using namespace hp1;
  double prof = 0.0;
  double ratio = 0.0;
  double spread = 0.0;
  for (double rho : kRhoGrid) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int d = 0; d < 20; ++d) {
      const ChartPoint p{Chart::South, random_unit_quaternion(rng) * rho};
      const double f = bruhat_field(p).coeff;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      const double nb = f / bruhat_reference_coeff();
      prof = std::max(prof, std::abs(nb / bruhat_profile_closed_form(rho) - 1.0));
      const double g = nb / invariant_field(p).coeff;
      ratio = std::max(ratio, std::abs(g / ratio_closed_form(rho) - 1.0));
    }
    spread = std::max(spread, hi - lo);
  }
  c.at_most("profile_relative_error", prof, tolerance(cfg, "profile_rel"));
  c.at_most("ratio_relative_error", ratio, tolerance(cfg, "profile_rel"));
  c.at_most("direction_spread", spread, tolerance(cfg, "direction_spread"));
  const ChartPoint pole{Chart::North, Quaternion{}};
  c.at_most("north_pole_coeff", std::abs(bruhat_field(pole).coeff), tolerance(cfg, "north_pole"));
  c.equal("north_pole_rank", rank_at(pole), 0);
  int min_rank = 4;
  for (int t = 0; t < 10; ++t) {
    min_rank = std::min(min_rank, rank_at({Chart::South, random_quaternion(rng)}));
  }
  c.equal("south_chart_min_rank", min_rank, 4);
  double lie = 0.0;
  for (int t = 0; t < 3; ++t) {
    const ChartPoint p{Chart::South, random_quaternion_in_shell(rng, 0.3, 1.5)};
    lie = std::max(lie, lie_derivative_check(p, random_algebra_element(2, rng)));
  }
  c.at_most("lie_derivative_residual", lie, tolerance(cfg, "lie_derivative"));
}

void suite_leaves(Checks& c, int n, Rng& rng, std::uint64_t seed) {
  int mismatches = 0;
  int wrong_dims = 0;
  int retries = 0;
  for (const auto& w : all_permutations(n)) {
    const auto word = reduced_word(w);
    const auto g = random_leaf_point(word, n, rng);
    retries += g.retries;
    mismatches += !g.cell_matches;
    wrong_dims += leaf_dimension(word, n, 2, seed) != 4 * static_cast<int>(word.size());
  }
  c.equal("cell_mismatches", mismatches, 0);
  c.equal("dimension_mismatches", wrong_dims, 0);
  c.flag("retries_within_budget", retries <= 3 * static_cast<int>(all_permutations(n).size()));
}

void suite_dressing(Checks& c, int n, Rng& rng, const Config& cfg) {
  const double tol = tolerance(cfg, "phase_dev");
  double dev = 0.0;
  bool constant = true;
  for (const auto& w : all_permutations(std::min(n, 3))) {
    Permutation wn = w;
    if (n > 3) wn = random_permutation(n, rng);
    const QMatrix k = random_spheroid(n, rng) * permutation_matrix(wn);
    const OrbitReport rep = orbit_probe(k, 100, rng());
    dev = std::max(dev, rep.phase_dev);
    constant = constant && rep.w_constant;
  }
  c.at_most("phase_deviation", dev, tol);
  c.flag("permutation_constant", constant);
  const QMatrix id = QMatrix::identity(static_cast<std::size_t>(n));
  c.at_most("identity_fixed", frobenius_distance(dress(random_ru(n, rng), id), id), tol);
  if (n == 2) {
    const OrbitReport rep = orbit_probe(permutation_matrix(Permutation({2, 1})), 100, rng());
    c.at_most("kv_reconstruction", *rep.reconstruction_error, tolerance(cfg, "reconstruction"));
  }
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"schouten", 1e-10},       {"lambda_zero", 1e-12},     {"lambda_nonzero", 1e-3},
      {"spheroid", 1e-12},       {"profile_rel", 1e-6},      {"direction_spread", 1e-9},
      {"north_pole", 1e-10},     {"lie_derivative", 1e-3},   {"phase_dev", 1e-8},
      {"reconstruction", 1e-9},
  };
  return t;
}

Config config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  Config cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "output_path") {
      if (!value.is_string()) throw ParseError("output_path must be a string");
      cfg.output_path = value.get<std::string>();
    } else if (key == "tolerances") {
      if (!value.is_object()) throw ParseError("tolerances must be an object");
      for (const auto& [name, tol] : value.items()) {
        if (!default_tolerances().contains(name)) throw ParseError("unknown tolerance '" + name + "'");
        if (!tol.is_number() || !(tol.get<double>() > 0.0)) {
          throw ParseError("tolerance '" + name + "' must be a positive number");
        }
        cfg.tolerances[name] = tol.get<double>();
      }
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

double tolerance(const Config& cfg, const std::string& name) {
  if (const auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const Config& cfg) {
  if (flag) return *flag;
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("QFLAG_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ParseError("QFLAG_SEED must be a non-negative integer");
    return v;
  }
  return 1;
}

CommandResult cmd_decompose(const std::string& kind, const json& input) {
  return guarded([&] {
    const QMatrix g = io::qmatrix_from_json(input);
    if (kind == "bruhat") {
      const BruhatForm f = bruhat(g);
      const json j = {{"kind", "bruhat"},
                      {"factors", io::to_json(f)},
                      {"v_in_v_w", in_v_w(f.V, f.w, 1e-12)},
                      {"reconstruction_error", frobenius_distance(f.reconstruct(), g)}};
      return CommandResult{kPass, dump(j), ""};
    }
    if (kind == "iwasawa") {
      const IwasawaForm f = iwasawa(g);
      const json j = {{"kind", "iwasawa"},
                      {"factors", io::to_json(f)},
                      {"reconstruction_error", frobenius_distance(f.reconstruct(), g)}};
      return CommandResult{kPass, dump(j), ""};
    }
    return CommandResult{kUsage, "", "unknown decomposition '" + kind + "'"};
  });
}

CommandResult cmd_ddet(const json& input) {
  return guarded([&] {
    const QMatrix g = io::qmatrix_from_json(input);
    const json j = {{"kind", "ddet"}, {"ddet", dieudonne_det(g)}};
    return CommandResult{kPass, dump(j), ""};
  });
}

CommandResult cmd_dress(const json& g_in, const json& k_in) {
  return guarded([&] {
    const QMatrix g = io::qmatrix_from_json(g_in);
    const QMatrix k = io::qmatrix_from_json(k_in);
    const QMatrix out = dress(g, k);
    const json j = {{"kind", "dress"},
                    {"K", io::to_json(out)},
                    {"signature_before", io::to_json(leaf_signature(k))},
                    {"signature_after", io::to_json(leaf_signature(out))}};
    return CommandResult{kPass, dump(j), ""};
  });
}

CommandResult cmd_verify(const std::string& suite, int n, std::uint64_t seed, const Config& cfg) {
  return guarded([&] {
    if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
      return CommandResult{kUsage, "", "unknown suite '" + suite + "'"};
    }
    if (n < 2 || n > 4) return CommandResult{kUsage, "", "--n must be 2, 3 or 4"};
    Rng rng(seed);
    Checks c;
    if (suite == "schouten") suite_schouten(c, n, rng, cfg);
    if (suite == "lambda") suite_lambda(c, n, cfg);
    if (suite == "spheroid") suite_spheroid(c, n, rng, cfg);
    if (suite == "hp1") suite_hp1(c, rng, cfg);
    if (suite == "leaves") suite_leaves(c, n, rng, seed);
    if (suite == "dressing") suite_dressing(c, n, rng, cfg);
    return c.report(suite, suite == "hp1" ? 2 : n, seed);
  });
}

CommandResult cmd_profile(const ProfileArgs& a) {
  if (!(a.rho_min > 0.0) || !(a.rho_min < a.rho_max)) {
    return {kUsage, "", "need 0 < rho-min < rho-max"};
  }
  if (a.steps < 2) return {kUsage, "", "need steps >= 2"};
  if (a.directions < 1) return {kUsage, "", "need directions >= 1"};
  return guarded([&] {
    std::vector<Quaternion> dirs;
    for (int d = 0; d < a.directions; ++d) {
      Rng rng(a.seed + static_cast<std::uint64_t>(d));
      dirs.push_back(random_unit_quaternion(rng));
    }
    std::ostringstream out;
    out << "rho,direction_seed,coeff_bruhat,coeff_invariant,ratio,expected_ratio,abs_err\n";
    for (int s = 0; s < a.steps; ++s) {
      const double rho = a.rho_min + (a.rho_max - a.rho_min) * s / (a.steps - 1);
      for (int d = 0; d < a.directions; ++d) {
        const hp1::ChartPoint p{hp1::Chart::South, dirs[static_cast<std::size_t>(d)] * rho};
        const double fb = hp1::normalized_bruhat(p);
        const double fi = hp1::invariant_field(p).coeff;
        const double expected = hp1::ratio_closed_form(rho);
        out << fmt(rho) << ',' << a.seed + static_cast<std::uint64_t>(d) << ',' << fmt(fb) << ','
            << fmt(fi) << ',' << fmt(fb / fi) << ',' << fmt(expected) << ','
            << fmt(std::abs(fb / fi - expected)) << '\n';
      }
    }
    return CommandResult{kPass, out.str(), ""};
  });
}

std::vector<int> parse_word(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<int> word;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int r = 0;
    try {
      r = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad word letter '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("bad word letter '" + tok + "'");
    word.push_back(r);
  }
  return word;
}

CommandResult cmd_leaf(const std::vector<int>& word, int n, std::uint64_t seed) {
  return guarded([&] {
    Rng rng(seed);
    const GenericLeafPoint g = random_leaf_point(word, n, rng);
    const int dim = leaf_dimension(word, n, 2, seed);
    json params = json::array();
    for (const auto& v : g.point.params) params.push_back(io::to_json(v));
    const bool ok = g.cell_matches && dim == 4 * static_cast<int>(word.size());
    const json j = {{"kind", "leaf"},
                    {"n", n},
                    {"word", word},
                    {"seed", seed},
                    {"params", std::move(params)},
                    {"matrix", io::to_json(g.point.matrix)},
                    {"cell", cell_of(g.point.matrix).one_line()},
                    {"expected_cell", Permutation::from_word(word, n).one_line()},
                    {"signature", io::to_json(leaf_signature(g.point.matrix))},
                    {"retries", g.retries},
                    {"dimension", dim},
                    {"expected_dimension", 4 * static_cast<int>(word.size())},
                    {"pass", ok}};
    return CommandResult{ok ? kPass : kFailure, dump(j), ok ? "" : "leaf check failed"};
  });
}

}  // namespace qflag::cli
