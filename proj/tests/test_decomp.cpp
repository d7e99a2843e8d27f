#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qflag/decomp.hpp"
#include "qflag/errors.hpp"
#include "qflag/hp1geom.hpp"
#include "qflag/sampling.hpp"

using namespace qflag;

namespace {

const Quaternion J{0, 0, 1, 0};
const Quaternion K{0, 0, 0, 1};

// Complex 2n x 2n image of a quaternion matrix, q = a + b j with a, b complex.
Eigen::MatrixXcd complex_image(const QMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd c(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      const Quaternion& q = m(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
      const std::complex<double> a(q.re, q.im_i);
      const std::complex<double> b(q.im_j, q.im_k);
      c(2 * r, 2 * s) = a;
      c(2 * r, 2 * s + 1) = b;
      c(2 * r + 1, 2 * s) = -std::conj(b);
      c(2 * r + 1, 2 * s + 1) = std::conj(a);
    }
  }
  return c;
}

// Dieudonné determinant with the |q| residue: sqrt of the (real, nonnegative) complex determinant.
double ddet_oracle(const QMatrix& m) { return std::sqrt(std::abs(complex_image(m).determinant())); }

bool is_unit_upper(const QMatrix& m, double tol) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (max_abs_diff(m(i, i), 1.0) > tol) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (norm(m(i, j)) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("strict Bruhat form of [[1,0],[1,1]]") {
  const QMatrix g{{1.0, 0.0}, {1.0, 1.0}};
  const BruhatForm f = bruhat(g);
  CHECK(f.w == Permutation({2, 1}));
  CHECK(frobenius_distance(f.U, QMatrix{{1.0, 1.0}, {0.0, 1.0}}) <= 1e-14);
  CHECK(frobenius_distance(f.D, QMatrix{{-1.0, 0.0}, {0.0, 1.0}}) <= 1e-14);
  CHECK(frobenius_distance(f.V, QMatrix{{1.0, 1.0}, {0.0, 1.0}}) <= 1e-14);
  CHECK(frobenius_distance(f.reconstruct(), g) <= 1e-14);
}

TEST_CASE("permutation matrices decompose trivially") {
  for (int n = 1; n <= 4; ++n) {
    const auto id = QMatrix::identity(static_cast<std::size_t>(n));
    for (const auto& w : all_permutations(n)) {
      const BruhatForm f = bruhat(permutation_matrix(w));
      CHECK(f.w == w);
      CHECK(f.U == id);
      CHECK(f.D == id);
      CHECK(f.V == id);
    }
  }
}

TEST_CASE("build-then-decompose recovers every factor") {
  Rng rng(21);
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 50; ++t) {
      const Permutation w = random_permutation(n, rng);
      const QMatrix u = random_unit_upper(n, rng);
      const QMatrix d = random_invertible_diagonal(n, rng);
      const QMatrix v = random_v_w(w, rng);
      const QMatrix g = u * d * permutation_matrix(w) * v;
      const BruhatForm f = bruhat(g);
      REQUIRE(f.w == w);
      CHECK(frobenius_distance(f.U, u) <= 1e-8);
      CHECK(frobenius_distance(f.D, d) <= 1e-8);
      CHECK(frobenius_distance(f.V, v) <= 1e-8);
      CHECK(in_v_w(f.V, w, 1e-12));
      CHECK(is_unit_upper(f.U, 1e-15));
      // P_w V P_w^{-1} is unit lower triangular.
      const QMatrix pw = permutation_matrix(w);
      CHECK(max_below_diagonal(conj_transpose(pw * f.V * conj_transpose(pw))) <= 1e-12);
    }
  }
}

TEST_CASE("random dense matrices land in the top cell") {
  Rng rng(22);
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 20; ++t) {
      const QMatrix g = random_matrix(n, rng);
      const BruhatForm f = bruhat(g);
      CHECK(f.w == Permutation::longest(n));
      CHECK(frobenius_distance(f.reconstruct(), g) <= 1e-9 * frobenius_norm(g));
    }
  }
}

TEST_CASE("free entries of V count the cell dimension") {
  Rng rng(23);
  for (int n : {2, 3, 4}) {
    for (const auto& w : all_permutations(n)) {
      const QMatrix v = random_v_w(w, rng);
      int free = 0;
      for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = i + 1; j < v.cols(); ++j) free += norm(v(i, j)) > 0.0;
      CHECK(free == length(w));
    }
    const int dim_b = 2 * n * n + 2 * n;
    CHECK(4 * length(Permutation::longest(n)) + dim_b == 4 * n * n);
  }
}

TEST_CASE("in_v_w rejects entries outside the inversions") {
  QMatrix v = QMatrix::identity(3);
  v(0, 1) = 1.0;
  CHECK(in_v_w(v, Permutation({2, 1, 3}), 1e-12));
  CHECK_FALSE(in_v_w(v, Permutation({1, 3, 2}), 1e-12));
}

TEST_CASE("singular input") {
  CHECK_THROWS_AS(bruhat(QMatrix(3, 3)), SingularMatrixError);
  const QMatrix rank_one{{1.0, J}, {K, K * J}};
  CHECK_THROWS_AS(bruhat(rank_one), SingularMatrixError);
  CHECK_THROWS_AS(dieudonne_det(rank_one), SingularMatrixError);
  CHECK_THROWS_AS(iwasawa(rank_one), SingularMatrixError);
}

TEST_CASE("Dieudonne determinant") {
  const std::vector<Quaternion> d = {J, 2.0 * K};
  CHECK(dieudonne_det(QMatrix::diagonal(d)) == doctest::Approx(2.0).epsilon(1e-15));
  Rng rng(24);
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 30; ++t) {
      const QMatrix a = random_matrix(n, rng);
      const QMatrix b = random_matrix(n, rng);
      CHECK(std::abs(dieudonne_det(a) / ddet_oracle(a) - 1.0) <= 1e-9);
      CHECK(std::abs(dieudonne_det(a * b) / (dieudonne_det(a) * dieudonne_det(b)) - 1.0) <= 1e-9);
      CHECK(std::abs(dieudonne_det(random_symplectic(n, rng)) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("Iwasawa decomposition") {
  const auto id = QMatrix::identity(3);
  const IwasawaForm fi = iwasawa(id);
  CHECK(frobenius_distance(fi.K, id) <= 1e-15);
  CHECK(frobenius_distance(fi.R, id) <= 1e-15);
  CHECK(frobenius_distance(fi.Uu, id) <= 1e-15);

  Rng rng(25);
  for (int n : {2, 3, 4}) {
    const auto idn = QMatrix::identity(static_cast<std::size_t>(n));
    for (int t = 0; t < 30; ++t) {
      const QMatrix k0 = random_symplectic(n, rng);
      const IwasawaForm fk = iwasawa(k0);
      CHECK(frobenius_distance(fk.K, k0) <= 1e-12);
      CHECK(frobenius_distance(fk.R, idn) <= 1e-12);
      CHECK(frobenius_distance(fk.Uu, idn) <= 1e-12);

      const QMatrix ru = random_ru(n, rng);
      std::vector<Quaternion> diag;
      QMatrix u0 = idn;
      for (std::size_t i = 0; i < ru.rows(); ++i) {
        diag.push_back(ru(i, i));
        for (std::size_t j = i + 1; j < ru.cols(); ++j) u0(i, j) = ru(i, j) / ru(i, i).re;
      }
      const QMatrix r0 = QMatrix::diagonal(diag);
      const IwasawaForm f = iwasawa(k0 * r0 * u0);
      CHECK(frobenius_distance(f.K, k0) <= 1e-9);
      CHECK(frobenius_distance(f.R, r0) <= 1e-9);
      CHECK(frobenius_distance(f.Uu, u0) <= 1e-9);
      CHECK(symplectic_defect(f.K) <= 1e-12);
    }
  }
}

TEST_CASE("dressing action") {
  Rng rng(26);
  const QMatrix p12 = permutation_matrix(Permutation({2, 1}));
  for (double t : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
    const QMatrix g{{1.0, t}, {0.0, 1.0}};
    const QMatrix expect = QMatrix{{t, 1.0}, {1.0, -t}} * (1.0 / std::sqrt(1.0 + t * t));
    CHECK(frobenius_distance(dress(g, p12), expect) <= 1e-12);
    CHECK(frobenius_distance(expect, hp1::coset_rep({hp1::Chart::South, -t})) <= 1e-15);
  }
  for (int n : {2, 3}) {
    const auto idn = QMatrix::identity(static_cast<std::size_t>(n));
    for (int t = 0; t < 30; ++t) {
      const QMatrix k = random_symplectic(n, rng);
      const QMatrix g1 = random_ru(n, rng);
      const QMatrix g2 = random_ru(n, rng);
      CHECK(frobenius_distance(dress(idn, k), k) <= 1e-12);
      CHECK(frobenius_distance(dress(g1, idn), idn) <= 1e-12);
      CHECK(frobenius_distance(dress(g2, dress(g1, k)), dress(g2 * g1, k)) <= 1e-9);
      const LeafSignature a = leaf_signature(k);
      const LeafSignature b = leaf_signature(dress(g1, k));
      CHECK(a.w == b.w);
      CHECK(signature_distance(a, b) <= 1e-8);
    }
  }
  const QMatrix lower{{1.0, 0.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(dress(lower, p12), PreconditionError);
  const QMatrix negative{{-1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(dress(negative, p12), PreconditionError);
  CHECK_THROWS_AS(dress(QMatrix::identity(2), lower), PreconditionError);
  CHECK(in_ru(random_ru(3, rng), 1e-10));
}

TEST_CASE("leaf signatures of sigma P_w") {
  Rng rng(27);
  for (int n : {2, 3, 4}) {
    for (const auto& w : all_permutations(n)) {
      const LeafSignature plain = leaf_signature(permutation_matrix(w));
      CHECK(plain.w == w);
      for (const auto& p : plain.phases) CHECK(max_abs_diff(p, 1.0) <= 1e-15);

      std::vector<Quaternion> sigma;
      for (int i = 0; i < n; ++i) sigma.push_back(random_unit_quaternion(rng));
      const LeafSignature s = leaf_signature(QMatrix::diagonal(sigma) * permutation_matrix(w));
      CHECK(s.w == w);
      for (std::size_t i = 0; i < sigma.size(); ++i) CHECK(max_abs_diff(s.phases[i], sigma[i]) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(leaf_signature(QMatrix{{2.0}}), PreconditionError);
}
