#include "qflag/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qflag/errors.hpp"

namespace qflag {

namespace {

using Mask = Multivector::Mask;

constexpr Mask bit(int a) { return Mask{1} << a; }

// Visits every k-subset of {0..d-1} as a sorted index array.
template <class Fn>
void for_each_subset(int d, int k, Fn&& fn) {
  if (k > d) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

double binomial(int d, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (d - i) / (i + 1);
  return c;
}

Multivector ad_by_minors(const Eigen::MatrixXd& ad, const Multivector& p) {
  const int d = static_cast<int>(ad.rows());
  const int k = p.grade();
  Multivector out(p.n(), k);
  Eigen::MatrixXd block(k, k);
  for (const auto& [mask, c] : p.terms()) {
    const auto cols = mask_positions(mask);
    for_each_subset(d, k, [&](const std::vector<int>& rows) {
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          block(a, b) = ad(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
        }
      }
      const double det = block.determinant();
      if (det != 0.0) out.add(positions_mask(rows), c * det);
    });
  }
  out.prune();
  return out;
}

Multivector ad_by_tensor(const Eigen::MatrixXd& ad, const Multivector& p) {
  const int d = static_cast<int>(ad.rows());
  const int k = p.grade();
  std::size_t total = 1;
  for (int m = 0; m < k; ++m) total *= static_cast<std::size_t>(d);
  std::vector<double> tensor(total, 0.0);
  std::vector<double> scratch(total, 0.0);

  auto flat = [d, k](const std::vector<int>& idx) {
    std::size_t f = 0;
    for (int m = 0; m < k; ++m) f = f * static_cast<std::size_t>(d) + static_cast<std::size_t>(idx[static_cast<std::size_t>(m)]);
    return f;
  };

  // Antisymmetric tensor: entry at every reordering of a term carries the permutation sign.
  std::vector<int> order(static_cast<std::size_t>(k));
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (const auto& [mask, c] : p.terms()) {
    const auto pos = mask_positions(mask);
    std::iota(order.begin(), order.end(), 0);
    do {
      int inversions = 0;
      for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
          if (order[static_cast<std::size_t>(a)] > order[static_cast<std::size_t>(b)]) ++inversions;
        }
        idx[static_cast<std::size_t>(a)] = pos[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])];
      }
      tensor[flat(idx)] += (inversions % 2 == 0 ? c : -c);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  // Apply Ad on slot m: viewing the tensor as (left, d, right).
  std::size_t right = total / static_cast<std::size_t>(d);
  std::size_t left = 1;
  for (int m = 0; m < k; ++m) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    const auto du = static_cast<std::size_t>(d);
    for (std::size_t l = 0; l < left; ++l) {
      for (std::size_t j = 0; j < du; ++j) {
        const double* src = &tensor[(l * du + j) * right];
        for (std::size_t i = 0; i < du; ++i) {
          const double a = ad(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          if (a == 0.0) continue;
          double* dst = &scratch[(l * du + i) * right];
          for (std::size_t r = 0; r < right; ++r) dst[r] += a * src[r];
        }
      }
    }
    tensor.swap(scratch);
    left *= du;
    right /= du;
  }

  Multivector out(p.n(), k);
  for_each_subset(d, k, [&](const std::vector<int>& sorted) {
    const double c = tensor[flat(sorted)];
    if (c != 0.0) out.add(positions_mask(sorted), c);
  });
  out.prune();
  return out;
}

}  // namespace

Multivector::Multivector(int n, int grade) : n_(n), grade_(grade) {
  if (grade < 0) throw PreconditionError("multivector grade must be non-negative");
  const int d = SpAlgebra::get(n).dim();
  if (grade > d) throw PreconditionError("grade exceeds dim sp(n)");
}

Multivector Multivector::from_element(int n, const AlgebraElement& x) {
  const auto& alg = SpAlgebra::get(n);
  if (x.size() != alg.dim()) throw PreconditionError("element has wrong dimension");
  Multivector m(n, 1);
  for (int a = 0; a < alg.dim(); ++a) {
    if (x[a] != 0.0) m.add(bit(a), x[a]);
  }
  m.prune();
  return m;
}

Multivector Multivector::monomial(int n, std::span<const int> positions, double c) {
  Multivector m(n, static_cast<int>(positions.size()));
  const int d = SpAlgebra::get(n).dim();
  Mask mask = 0;
  int inversions = 0;
  for (std::size_t a = 0; a < positions.size(); ++a) {
    const int pa = positions[a];
    if (pa < 0 || pa >= d) throw PreconditionError("basis position out of range");
    if (mask & bit(pa)) return m;
    mask |= bit(pa);
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      if (positions[b] < pa) ++inversions;
    }
  }
  m.add(mask, inversions % 2 == 0 ? c : -c);
  m.prune();
  return m;
}

void Multivector::add(Mask mask, double c) { terms_[mask] += c; }

double Multivector::coefficient(Mask mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? 0.0 : it->second;
}

double Multivector::coefficient(std::span<const int> sorted_positions) const {
  return coefficient(positions_mask(sorted_positions));
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void Multivector::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

void Multivector::check_compatible(const Multivector& o) const {
  if (n_ != o.n_ || grade_ != o.grade_) {
    throw PreconditionError("multivectors differ in n or grade");
  }
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_compatible(o);
  for (const auto& [mask, c] : o.terms_) terms_[mask] += c;
  prune();
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_compatible(o);
  for (const auto& [mask, c] : o.terms_) terms_[mask] -= c;
  prune();
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (auto& [mask, c] : terms_) c *= s;
  prune();
  return *this;
}

std::vector<int> mask_positions(Mask mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask) {
    const int a = std::countr_zero(mask);
    out.push_back(a);
    mask &= mask - 1;
  }
  return out;
}

Mask positions_mask(std::span<const int> positions) {
  Mask m = 0;
  for (int a : positions) m |= bit(a);
  return m;
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  Mask rest = b;
  while (rest) {
    const int y = std::countr_zero(rest);
    rest &= rest - 1;
    swaps += std::popcount(y >= 63 ? Mask{0} : (a >> (y + 1)));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  if (a.n() != b.n()) throw PreconditionError("wedge of multivectors over different sp(n)");
  Multivector out(a.n(), a.grade() + b.grade());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = wedge_sign(ma, mb);
      if (s != 0) out.add(ma | mb, s * ca * cb);
    }
  }
  out.prune();
  return out;
}

Multivector wedge_elements(int n, std::span<const AlgebraElement> factors) {
  Multivector acc(n, 0);
  acc.add(0, 1.0);
  for (const auto& x : factors) acc = wedge(acc, Multivector::from_element(n, x));
  return acc;
}

double max_abs_diff(const Multivector& a, const Multivector& b) { return (a - b).max_abs(); }

Multivector schouten_decomposable(const Multivector& p, const Multivector& q) {
  if (p.n() != q.n()) throw PreconditionError("Schouten bracket of different sp(n)");
  const int grade = p.grade() + q.grade() - 1;
  if (grade < 0) throw PreconditionError("Schouten bracket of two scalars is undefined");
  Multivector out(p.n(), grade);
  if (p.grade() == 0 || q.grade() == 0) return out;
  const auto& alg = SpAlgebra::get(p.n());

  for (const auto& [ms, cs] : p.terms()) {
    const auto xs = mask_positions(ms);
    for (const auto& [mt, ct] : q.terms()) {
      const auto ys = mask_positions(mt);
      for (std::size_t a = 0; a < xs.size(); ++a) {
        const Mask rest_s = ms & ~bit(xs[a]);
        for (std::size_t b = 0; b < ys.size(); ++b) {
          const Mask rest_t = mt & ~bit(ys[b]);
          const int rest_sign = wedge_sign(rest_s, rest_t);
          if (rest_sign == 0) continue;
          const Mask rest = rest_s | rest_t;
          // (-1)^{a+b} with 1-based a, b equals (-1)^{a+b} with 0-based a, b.
          const double base = ((a + b) % 2 == 0 ? 1.0 : -1.0) * rest_sign * cs * ct;
          for (const auto& [c, f] : alg.structure(xs[a], ys[b])) {
            const int s = wedge_sign(bit(c), rest);
            if (s != 0) out.add(bit(c) | rest, s * f * base);
          }
        }
      }
    }
  }
  out.prune();
  return out;
}

Multivector schouten(const Multivector& p, const Multivector& q) {
  Multivector out = schouten_decomposable(p, q);
  if (p.grade() % 2 == 0) out *= -1.0;
  return out;
}

namespace {

double parity(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

double antisymmetry_residual(const Multivector& p, const Multivector& q) {
  const int a = p.grade();
  const int b = q.grade();
  return max_abs_diff(schouten(p, q), parity(a * b) * schouten(q, p));
}

double leibniz_residual(const Multivector& p, const Multivector& q, const Multivector& r) {
  const int a = p.grade();
  const int b = q.grade();
  const Multivector rhs = wedge(schouten(p, q), r) + parity(a * b + b) * wedge(q, schouten(p, r));
  return max_abs_diff(schouten(p, wedge(q, r)), rhs);
}

double jacobi_residual(const Multivector& p, const Multivector& q, const Multivector& r) {
  const int a = p.grade();
  const int b = q.grade();
  const int c = r.grade();
  const Multivector sum = parity(a * (c - 1)) * schouten(p, schouten(q, r)) +
                          parity(b * (a - 1)) * schouten(q, schouten(r, p)) +
                          parity(c * (b - 1)) * schouten(r, schouten(p, q));
  return sum.max_abs();
}

Multivector lambda_element(int n) {
  if (n < 2) throw PreconditionError("Lambda needs n >= 2");
  const auto& alg = SpAlgebra::get(n);
  Multivector lam(n, 4);
  for (int p = 1; p <= n; ++p) {
    for (int q = p + 1; q <= n; ++q) {
      const std::array<int, 4> pos{alg.position(BasisIndex::e(p, q)),
                                   alg.position(BasisIndex::s(Imag::I, p, q)),
                                   alg.position(BasisIndex::s(Imag::J, p, q)),
                                   alg.position(BasisIndex::s(Imag::K, p, q))};
      lam += Multivector::monomial(n, pos);
    }
  }
  return lam;
}

Multivector ad_multivector(const AlgebraElement& x, const Multivector& p) {
  return schouten_decomposable(Multivector::from_element(p.n(), x), p);
}

Multivector intrinsic_derivative(const AlgebraElement& x, int n) {
  return ad_multivector(x, lambda_element(n));
}

Multivector ad_group(const QMatrix& g, const Multivector& p, AdRoute route) {
  const auto& alg = SpAlgebra::get(p.n());
  const Eigen::MatrixXd ad = alg.adjoint(g);
  const int k = p.grade();
  if (k == 0) return p;
  const int d = alg.dim();

  const double tensor_size = std::pow(static_cast<double>(d), k);
  constexpr double kMaxTensor = 1 << 23;
  if (route == AdRoute::Auto) {
    const double minors_cost = static_cast<double>(p.terms().size()) * binomial(d, k) * k * k * k;
    const double tensor_cost = k * tensor_size * d;
    route = (tensor_size <= kMaxTensor && tensor_cost < minors_cost) ? AdRoute::Tensor
                                                                     : AdRoute::Minors;
  }
  if (route == AdRoute::Tensor) {
    if (tensor_size > kMaxTensor) throw PreconditionError("tensor route too large for this grade");
    return ad_by_tensor(ad, p);
  }
  return ad_by_minors(ad, p);
}

Multivector pi_trivialized(const QMatrix& g) {
  const int n = static_cast<int>(g.rows());
  const Multivector lam = lambda_element(n);
  return ad_group(g, lam) - lam;
}

Multivector embed_sp2_multivector(const Multivector& p, int r, int n) {
  if (p.n() != 2) throw PreconditionError("embedding expects a multivector over sp(2)");
  if (r < 1 || r >= n) throw PreconditionError("embedding row out of range");
  const auto& small = SpAlgebra::get(2);
  const auto& big = SpAlgebra::get(n);
  std::vector<int> image(static_cast<std::size_t>(small.dim()));
  for (int a = 0; a < small.dim(); ++a) {
    BasisIndex b = small.index(a);
    if (b.kind == BasisIndex::Kind::Dg) {
      b.p = b.p - 1 + r;
    } else {
      b.p = r;
      b.q = r + 1;
    }
    image[static_cast<std::size_t>(a)] = big.position(b);
  }
  Multivector out(n, p.grade());
  std::vector<int> mapped;
  for (const auto& [mask, c] : p.terms()) {
    mapped.clear();
    for (int a : mask_positions(mask)) mapped.push_back(image[static_cast<std::size_t>(a)]);
    out += Multivector::monomial(n, mapped, c);
  }
  return out;
}

DualVector DualVector::basis(int n, int a) {
  DualVector z{n, Eigen::VectorXd::Zero(SpAlgebra::get(n).dim())};
  z.coeffs[a] = 1.0;
  return z;
}

double pairing(std::span<const DualVector> covectors, const Multivector& p) {
  const int k = p.grade();
  if (static_cast<int>(covectors.size()) != k) {
    throw PreconditionError("pairing needs as many covectors as the grade");
  }
  for (const auto& z : covectors) {
    if (z.n != p.n()) throw PreconditionError("covector and multivector over different sp(n)");
  }
  if (k == 0) return p.coefficient(Mask{0});
  double total = 0.0;
  Eigen::MatrixXd m(k, k);
  for (const auto& [mask, c] : p.terms()) {
    const auto pos = mask_positions(mask);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        m(a, b) = covectors[static_cast<std::size_t>(a)].coeffs[pos[static_cast<std::size_t>(b)]];
      }
    }
    total += c * m.determinant();
  }
  return total;
}

DualVector four_bracket(const DualVector& z1, const DualVector& z2, const DualVector& z3,
                        const DualVector& z4) {
  const int n = z1.n;
  if (z2.n != n || z3.n != n || z4.n != n) {
    throw PreconditionError("4-bracket arguments over different sp(n)");
  }
  const auto& alg = SpAlgebra::get(n);
  const std::array<DualVector, 4> zs{z1, z2, z3, z4};
  DualVector out{n, Eigen::VectorXd::Zero(alg.dim())};
  for (int b = 0; b < alg.dim(); ++b) {
    out.coeffs[b] = pairing(zs, intrinsic_derivative(alg.unit(b), n));
  }
  return out;
}

}  // namespace qflag
