// Acceptance run: one PASS/FAIL line per criterion. `acceptance --only N` runs a single one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qflag/decomp.hpp"
#include "qflag/flags.hpp"
#include "qflag/hp1geom.hpp"
#include "qflag/multivector.hpp"
#include "qflag/sampling.hpp"
#include "qflag/sp_algebra.hpp"

using namespace qflag;
using hp1::Chart;
using hp1::ChartPoint;

namespace {

const std::vector<double> kRhoGrid = {0.1, 0.25, 0.5, 1.0, 2.0, 3.0};
constexpr Imag kUnits[] = {Imag::I, Imag::J, Imag::K};

struct Outcome {
  bool pass;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome c1() {
  const Timer timer;
  Rng rng(101);
  std::vector<Quaternion> dirs;
  for (int d = 0; d < 20; ++d) dirs.push_back(random_unit_quaternion(rng));
  double worst_rel = 0.0, worst_spread = 0.0;
  for (double rho : kRhoGrid) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& u : dirs) {
      const double c = hp1::normalized_bruhat({Chart::South, u * rho});
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      const double expect = (1 + rho * rho) * (1 + 3 * std::pow(rho, 4));
      worst_rel = std::max(worst_rel, std::abs(c / expect - 1.0));
    }
    worst_spread = std::max(worst_spread, hi - lo);
  }
  const double t = timer.seconds();
  return {worst_rel <= 1e-6 && worst_spread <= 1e-9 && t < 5.0,
          fmt("max rel err %.2e, direction spread %.2e, %.2f s", worst_rel, worst_spread, t)};
}

double bruhat_over_invariant(const ChartPoint& p) {
  return hp1::normalized_bruhat(p) / hp1::invariant_field(p).coeff;
}

Outcome c2() {
  Rng rng(102);
  double worst = 0.0;
  for (double rho : kRhoGrid) {
    for (int d = 0; d < 5; ++d) {
      const double g = bruhat_over_invariant({Chart::South, random_unit_quaternion(rng) * rho});
      const double expect = (1 + 3 * std::pow(rho, 4)) / std::pow(1 + rho * rho, 3);
      worst = std::max(worst, std::abs(g / expect - 1.0));
    }
  }
  const double g1 = bruhat_over_invariant({Chart::South, random_unit_quaternion(rng)});
  const double g2 = bruhat_over_invariant({Chart::South, random_unit_quaternion(rng) * 2.0});
  const double spot = std::max(std::abs(g1 / 0.5 - 1.0), std::abs(g2 / (49.0 / 125.0) - 1.0));
  return {worst <= 1e-6 && spot <= 1e-6,
          fmt("max rel err %.2e, g(1) = %.12f, g(2) = %.12f", worst, g1, g2)};
}

Outcome c3() {
  const ChartPoint pole{Chart::North, Quaternion(0.0)};
  const double at_pole = std::abs(hp1::bruhat_field(pole).coeff);
  const int pole_rank = hp1::rank_at(pole);
  Rng rng(103);
  int rank4 = 0;
  for (int t = 0; t < 50; ++t) {
    rank4 += hp1::rank_at({Chart::South, random_quaternion_in_shell(rng, 0.05, 5.0)}) == 4;
  }
  return {at_pole <= 1e-10 && pole_rank == 0 && rank4 == 50,
          fmt("|coeff| at identity coset %.2e, rank there %.0f, rank 4 at %.0f/50 points", at_pole,
              pole_rank, rank4)};
}

Outcome c4() {
  const Timer timer;
  const Multivector l2 = lambda_element(2);
  const Multivector l3 = lambda_element(3);
  const double self2 = schouten(l2, l2).max_abs();
  const double self3 = schouten(l3, l3).max_abs();
  Rng rng(104);
  double sph = 0.0;
  for (int n : {2, 3}) {
    const Multivector lam = lambda_element(n);
    for (int t = 0; t < 50; ++t) {
      sph = std::max(sph, ad_multivector(random_spheroid_element(n, rng), lam).max_abs());
    }
  }
  const double t = timer.seconds();
  return {self2 <= 1e-12 && self3 > 1e-3 && sph <= 1e-12 && t < 30.0,
          fmt("max|[L2,L2]| %.2e, max|[L3,L3]| %.3g, spheroid %.2e, %.2f s", self2, self3, sph, t)};
}

// The sp(2) relations exactly as printed, checked against the bracket.
Outcome c5() {
  const auto& alg = SpAlgebra::get(2);
  const AlgebraElement zero = alg.zero();
  int total = 0, wrong = 0;
  std::string first_wrong;
  auto rel = [&](const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& printed,
                 const std::string& name) {
    ++total;
    if ((alg.bracket(a, b) - printed).cwiseAbs().maxCoeff() != 0.0) {
      if (wrong++ == 0) first_wrong = name;
    }
  };
  auto prod = [](Imag x, Imag y) {
    const int a = static_cast<int>(x);
    const int b = static_cast<int>(y);
    return std::pair{static_cast<Imag>(3 - a - b), (b - a + 3) % 3 == 1 ? 1.0 : -1.0};
  };
  for (Imag x : kUnits) {
    const std::string sx(1, name_of(x));
    rel(sp2::M(x), sp2::E(), zero, "[M_" + sx + ",E]");
    rel(sp2::H(x), sp2::E(), 2.0 * sp2::S(x), "[H_" + sx + ",E]");
    rel(sp2::S(x), sp2::E(), 2.0 * sp2::H(x), "[S_" + sx + ",E]");
    for (Imag y : kUnits) {
      const std::string tag = sx + "," + std::string(1, name_of(y));
      if (x == y) {
        rel(sp2::M(x), sp2::M(y), zero, "[M,M]" + tag);
        rel(sp2::H(x), sp2::H(y), zero, "[H,H]" + tag);
        rel(sp2::S(x), sp2::S(y), zero, "[S,S]" + tag);
        rel(sp2::S(x), sp2::H(y), -2.0 * sp2::E(), "[S_" + sx + ",H_" + sx + "]");
        rel(sp2::S(x), sp2::M(y), zero, "[S,M]" + tag);
        rel(sp2::H(x), sp2::M(y), zero, "[H,M]" + tag);
      } else {
        const auto [z, s] = prod(x, y);
        rel(sp2::M(x), sp2::M(y), 2.0 * s * sp2::M(z), "[M,M]" + tag);
        rel(sp2::H(x), sp2::H(y), 2.0 * s * sp2::M(z), "[H,H]" + tag);
        rel(sp2::S(x), sp2::S(y), 2.0 * s * sp2::M(z), "[S,S]" + tag);
        rel(sp2::S(x), sp2::H(y), zero, "[S,H]" + tag);
        rel(sp2::S(x), sp2::M(y), 2.0 * s * sp2::S(z), "[S,M]" + tag);
        rel(sp2::H(x), sp2::M(y), 2.0 * s * sp2::H(z), "[H,M]" + tag);
      }
    }
  }
  std::string detail = std::to_string(total - wrong) + "/" + std::to_string(total) + " relations hold";
  if (wrong > 0) detail += ", first mismatch " + first_wrong;
  return {wrong == 0, detail};
}

Outcome c6() {
  Rng rng(106);
  double recovery = 0.0, mult = 0.0, sp = 0.0;
  bool structural = true;
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 200; ++t) {
      const Permutation w = random_permutation(n, rng);
      const QMatrix u = random_unit_upper(n, rng);
      const QMatrix d = random_invertible_diagonal(n, rng);
      const QMatrix v = random_v_w(w, rng);
      const BruhatForm f = bruhat(u * d * permutation_matrix(w) * v);
      if (!(f.w == w)) {
        structural = false;
        continue;
      }
      recovery = std::max({recovery, frobenius_distance(f.U, u), frobenius_distance(f.D, d),
                           frobenius_distance(f.V, v)});
      structural = structural && in_v_w(f.V, w, 1e-12);

      const QMatrix a = random_matrix(n, rng);
      const QMatrix b = random_matrix(n, rng);
      mult = std::max(mult, std::abs(dieudonne_det(a * b) / (dieudonne_det(a) * dieudonne_det(b)) - 1.0));
      sp = std::max(sp, std::abs(dieudonne_det(random_symplectic(n, rng)) - 1.0));
    }
  }
  return {structural && recovery <= 1e-8 && mult <= 1e-9 && sp <= 1e-9,
          fmt("recovery %.2e, ddet mult %.2e, ddet(Sp) dev %.2e", recovery, mult, sp) +
              (structural ? ", V in V_w" : ", structure violated")};
}

Outcome c7() {
  Rng rng(107);
  double phase = 0.0;
  bool constant = true;
  for (int n : {2, 3}) {
    for (const auto& w : all_permutations(n)) {
      const QMatrix k = random_spheroid(n, rng) * permutation_matrix(w);
      const OrbitReport r = orbit_probe(k, 100, rng());
      phase = std::max(phase, r.phase_dev);
      constant = constant && r.w_constant;
    }
  }
  const OrbitReport p = orbit_probe(permutation_matrix(Permutation({2, 1})), 100, rng());
  const double recon = p.reconstruction_error.value_or(INFINITY);
  return {constant && phase <= 1e-8 && recon <= 1e-9 && p.w_constant,
          fmt("max phase dev %.2e, k_v reconstruction %.2e", phase, recon) +
              (constant ? "" : ", permutation changed")};
}

Outcome c8() {
  const Timer timer;
  int checked = 0, ok = 0;
  std::string bad;
  // Every reduced word over {1,2}, up to the longest element.
  std::vector<std::vector<int>> words = {{}};
  for (std::size_t len = 0; len < 3; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words) {
      if (w.size() != len) continue;
      for (int s : {1, 2}) {
        auto x = w;
        x.push_back(s);
        if (is_reduced_word(x, 3)) next.push_back(x);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
  }
  int top = -1;
  for (const auto& w : words) {
    const int dim = leaf_dimension(w, 3, 2, 8);
    ++checked;
    if (dim == 4 * static_cast<int>(w.size())) {
      ++ok;
    } else {
      bad += " [" + std::to_string(w.size()) + "]";
    }
    if (w == std::vector<int>{1, 2, 1}) top = dim;
  }
  const double t = timer.seconds();
  return {ok == checked && top == 12 && t < 60.0,
          fmt("%.0f/%.0f reduced words match 4 len(w), dim [1,2,1] = %.0f, %.2f s", ok, checked,
              top, t) + bad};
}

Outcome c9() {
  Rng rng(109);
  double anti = 0.0, leib = 0.0, jac = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int gp = 1 + static_cast<int>(rng() % 4);
    const int gq = 1 + static_cast<int>(rng() % 4);
    const int gr = 1 + static_cast<int>(rng() % 4);
    const Multivector p = random_multivector(2, gp, 3, rng);
    const Multivector q = random_multivector(2, gq, 3, rng);
    const Multivector r = random_multivector(2, gr, 3, rng);
    anti = std::max(anti, antisymmetry_residual(p, q));
    if (gp + gq + gr - 1 <= 10) leib = std::max(leib, leibniz_residual(p, q, r));
    jac = std::max(jac, jacobi_residual(p, q, r));
  }
  int divisible = 0;
  for (int dim : {8, 12}) {
    for (int t = 0; t < 100; ++t) {
      divisible += hp1::contraction_rank(random_four_vector(dim, t % 4, rng)) % 4 == 0;
    }
  }
  const double worst = std::max({anti, leib, jac});
  return {worst <= 1e-10 && divisible == 200,
          fmt("antisymmetry %.2e, Leibniz %.2e, Jacobi %.2e, rank divisible by 4: %.0f/200", anti,
              leib, jac, divisible)};
}

Outcome c10() {
  Rng rng(110);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const ChartPoint p{Chart::South, random_quaternion_in_shell(rng, 0.3, 1.5)};
    worst = std::max(worst, hp1::lie_derivative_check(p, random_algebra_element(2, rng)));
  }
  return {worst <= 1e-3, fmt("max residual %.2e", worst)};
}

Outcome c11() {
  Rng rng(111);
  double mult = 0.0;
  for (int n : {2, 3}) {
    const Multivector lam = lambda_element(n);
    for (int t = 0; t < 100; ++t) {
      const QMatrix g = random_symplectic(n, rng);
      const QMatrix h = random_symplectic(n, rng);
      const Multivector lhs = ad_group(g * h, lam) - lam;
      const Multivector rhs = ad_group(g, ad_group(h, lam) - lam) + (ad_group(g, lam) - lam);
      mult = std::max(mult, max_abs_diff(lhs, rhs));
    }
  }
  double embed = 0.0;
  const Multivector l2 = lambda_element(2);
  const Multivector l3 = lambda_element(3);
  for (int r : {1, 2}) {
    for (int t = 0; t < 20; ++t) {
      const QMatrix a = random_symplectic(2, rng);
      const Multivector lhs = ad_group(embed_sp2(a, r, 3), l3) - l3;
      const Multivector rhs = embed_sp2_multivector(ad_group(a, l2) - l2, r, 3);
      embed = std::max(embed, max_abs_diff(lhs, rhs));
    }
  }
  return {mult <= 1e-10 && embed <= 1e-10,
          fmt("multiplicativity %.2e, embedding compatibility %.2e", mult, embed)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qflag acceptance run"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6,
                                                          c7, c8, c9, c10, c11};
  bool all = true;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only != 0 && only != i) continue;
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(i - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("C%-2d %s  %s\n", i, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
