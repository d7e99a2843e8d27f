#include "qflag/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qflag {

Quaternion random_quaternion(Rng& rng, double sigma) {
  std::normal_distribution<double> nd(0.0, sigma);
  const double a = nd(rng);
  const double b = nd(rng);
  const double c = nd(rng);
  const double d = nd(rng);
  return {a, b, c, d};
}

Quaternion random_unit_quaternion(Rng& rng) {
  Quaternion q;
  do {
    q = random_quaternion(rng);
  } while (norm(q) < 1e-6);
  return q / norm(q);
}

PureQuaternion random_pure(Rng& rng, double sigma) {
  std::normal_distribution<double> nd(0.0, sigma);
  const double a = nd(rng);
  const double b = nd(rng);
  const double c = nd(rng);
  return {a, b, c};
}

Quaternion random_quaternion_in_shell(Rng& rng, double rho_min, double rho_max) {
  const Quaternion dir = random_unit_quaternion(rng);
  std::uniform_real_distribution<double> ud(rho_min, rho_max);
  return dir * ud(rng);
}

AlgebraElement random_algebra_element(int n, Rng& rng, double sigma) {
  const auto& alg = SpAlgebra::get(n);
  std::normal_distribution<double> nd(0.0, sigma);
  AlgebraElement x(alg.dim());
  for (int a = 0; a < alg.dim(); ++a) x[a] = nd(rng);
  return x;
}

AlgebraElement random_spheroid_element(int n, Rng& rng, double sigma) {
  std::vector<PureQuaternion> s;
  for (int p = 0; p < n; ++p) s.push_back(random_pure(rng, sigma));
  return SpAlgebra::get(n).spheroid(s);
}

QMatrix random_symplectic(int n, Rng& rng, double sigma) {
  const auto& alg = SpAlgebra::get(n);
  return expm(alg.to_matrix(random_algebra_element(n, rng, sigma)));
}

QMatrix random_spheroid(int n, Rng& rng) {
  std::vector<Quaternion> d;
  for (int p = 0; p < n; ++p) d.push_back(random_unit_quaternion(rng));
  return QMatrix::diagonal(d);
}

QMatrix random_unit_upper(int n, Rng& rng, double sigma) {
  const auto sz = static_cast<std::size_t>(n);
  QMatrix u = QMatrix::identity(sz);
  for (std::size_t i = 0; i < sz; ++i) {
    for (std::size_t j = i + 1; j < sz; ++j) u(i, j) = random_quaternion(rng, sigma);
  }
  return u;
}

QMatrix random_v_w(const Permutation& w, Rng& rng, double sigma) {
  const auto sz = static_cast<std::size_t>(w.size());
  QMatrix v = QMatrix::identity(sz);
  for (std::size_t a = 0; a < sz; ++a) {
    for (std::size_t b = a + 1; b < sz; ++b) {
      if (w(static_cast<int>(a) + 1) > w(static_cast<int>(b) + 1)) {
        v(a, b) = random_quaternion(rng, sigma);
      }
    }
  }
  return v;
}

QMatrix random_invertible_diagonal(int n, Rng& rng) {
  std::vector<Quaternion> d;
  std::uniform_real_distribution<double> ud(0.5, 2.0);
  for (int p = 0; p < n; ++p) d.push_back(random_unit_quaternion(rng) * ud(rng));
  return QMatrix::diagonal(d);
}

QMatrix random_ru(int n, Rng& rng) {
  const auto sz = static_cast<std::size_t>(n);
  std::uniform_real_distribution<double> log_r(std::log(0.5), std::log(2.0));
  QMatrix g(sz, sz);
  for (std::size_t i = 0; i < sz; ++i) {
    g(i, i) = std::exp(log_r(rng));
    for (std::size_t j = i + 1; j < sz; ++j) g(i, j) = random_quaternion(rng, 0.5);
  }
  return g;
}

QMatrix random_matrix(int n, Rng& rng, double sigma) {
  const auto sz = static_cast<std::size_t>(n);
  QMatrix m(sz, sz);
  for (std::size_t i = 0; i < sz; ++i) {
    for (std::size_t j = 0; j < sz; ++j) m(i, j) = random_quaternion(rng, sigma);
  }
  return m;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  // Fisher-Yates with an explicit draw so the sequence does not depend on std::shuffle.
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
  return Permutation(std::move(v));
}

Multivector random_multivector(int n, int grade, int terms, Rng& rng) {
  const int d = SpAlgebra::get(n).dim();
  Multivector p(n, grade);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> pos(static_cast<std::size_t>(d));
    std::iota(pos.begin(), pos.end(), 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(grade); ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pos.size() - 1);
      std::swap(pos[i], pos[pick(rng)]);
    }
    pos.resize(static_cast<std::size_t>(grade));
    p += Multivector::monomial(n, pos, nd(rng));
  }
  return p;
}

hp1::ConstantFourVector random_four_vector(int dim, int decomposables, Rng& rng) {
  hp1::ConstantFourVector xi;
  xi.dim = dim;
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<Eigen::MatrixXd> factors;
  for (int f = 0; f < decomposables; ++f) {
    Eigen::MatrixXd m(dim, 4);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = nd(rng);
    factors.push_back(std::move(m));
  }
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int c = b + 1; c < dim; ++c)
        for (int e = c + 1; e < dim; ++e) {
          double coeff = 0.0;
          if (decomposables == 0) {
            coeff = nd(rng);
          } else {
            for (const auto& m : factors) {
              Eigen::Matrix4d minor;
              minor << m.row(a), m.row(b), m.row(c), m.row(e);
              coeff += minor.determinant();
            }
          }
          xi.coeffs[{a, b, c, e}] = coeff;
        }
  return xi;
}

}  // namespace qflag
