#include "qflag/sp_algebra.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "qflag/errors.hpp"

namespace qflag {

namespace {

constexpr double kStructurePrune = 1e-14;
constexpr double kAdjointSymplecticTol = 1e-8;
constexpr std::array<Imag, 3> kImags{Imag::I, Imag::J, Imag::K};

double real_inner(const QMatrix& a, const QMatrix& b) {
  double s = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    s += ea[i].re * eb[i].re + ea[i].im_i * eb[i].im_i + ea[i].im_j * eb[i].im_j +
         ea[i].im_k * eb[i].im_k;
  }
  return s;
}

}  // namespace

Quaternion unit_of(Imag x) {
  switch (x) {
    case Imag::I: return Quaternion::unit_i();
    case Imag::J: return Quaternion::unit_j();
    case Imag::K: return Quaternion::unit_k();
  }
  return {};
}

char name_of(Imag x) {
  switch (x) {
    case Imag::I: return 'i';
    case Imag::J: return 'j';
    case Imag::K: return 'k';
  }
  return '?';
}

std::string to_string(const BasisIndex& b) {
  switch (b.kind) {
    case BasisIndex::Kind::E:
      return "E(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
    case BasisIndex::Kind::S:
      return std::string("S(") + name_of(b.x) + ";" + std::to_string(b.p) + "," +
             std::to_string(b.q) + ")";
    case BasisIndex::Kind::Dg:
      return std::string("Dg(") + name_of(b.x) + ";" + std::to_string(b.p) + ")";
  }
  return {};
}

const SpAlgebra& SpAlgebra::get(int n) {
  if (n < 2 || n > kMaxN) {
    throw PreconditionError("sp(n) is supported for 2 <= n <= " + std::to_string(kMaxN));
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const SpAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot.reset(new SpAlgebra(n));
  return *slot;
}

SpAlgebra::SpAlgebra(int n) : n_(n) {
  for (int p = 1; p <= n; ++p) {
    for (int q = p + 1; q <= n; ++q) {
      basis_.push_back(BasisIndex::e(p, q));
      for (Imag x : kImags) basis_.push_back(BasisIndex::s(x, p, q));
    }
  }
  for (int p = 1; p <= n; ++p) {
    for (Imag x : kImags) basis_.push_back(BasisIndex::dg(x, p));
  }

  const auto sz = static_cast<std::size_t>(n);
  for (const auto& b : basis_) {
    QMatrix m(sz, sz);
    const auto p = static_cast<std::size_t>(b.p - 1);
    const auto q = static_cast<std::size_t>(b.q - 1);
    switch (b.kind) {
      case BasisIndex::Kind::E:
        m(p, q) = 1.0;
        m(q, p) = -1.0;
        break;
      case BasisIndex::Kind::S:
        m(p, q) = unit_of(b.x);
        m(q, p) = unit_of(b.x);
        break;
      case BasisIndex::Kind::Dg:
        m(p, p) = unit_of(b.x);
        break;
    }
    gram_.push_back(real_inner(m, m));
    matrices_.push_back(std::move(m));
  }

  const int d = dim();
  structure_.resize(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const QMatrix comm = matrix(a) * matrix(b) - matrix(b) * matrix(a);
      const AlgebraElement c = project(comm);
      auto& entry = structure_[static_cast<std::size_t>(a * d + b)];
      for (int k = 0; k < d; ++k) {
        if (std::abs(c[k]) > kStructurePrune) entry.emplace_back(k, c[k]);
      }
    }
  }
}

int SpAlgebra::position(const BasisIndex& b) const {
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    if (basis_[a] == b) return static_cast<int>(a);
  }
  throw PreconditionError("basis element " + to_string(b) + " is not in sp(" +
                          std::to_string(n_) + ")");
}

int SpAlgebra::position(std::string_view name) const {
  for (int a = 0; a < dim(); ++a) {
    if (this->name(a) == name) return a;
  }
  throw PreconditionError("unknown basis name '" + std::string(name) + "' for sp(" +
                          std::to_string(n_) + ")");
}

AlgebraElement SpAlgebra::unit(int a) const {
  AlgebraElement v = zero();
  v[a] = 1.0;
  return v;
}

QMatrix SpAlgebra::to_matrix(const AlgebraElement& x) const {
  if (x.size() != dim()) throw PreconditionError("coordinate vector has wrong dimension");
  const auto sz = static_cast<std::size_t>(n_);
  QMatrix m(sz, sz);
  for (int a = 0; a < dim(); ++a) {
    if (x[a] != 0.0) m += matrix(a) * x[a];
  }
  return m;
}

AlgebraElement SpAlgebra::project(const QMatrix& m) const {
  if (m.rows() != static_cast<std::size_t>(n_) || m.cols() != static_cast<std::size_t>(n_)) {
    throw PreconditionError("matrix size does not match sp(" + std::to_string(n_) + ")");
  }
  AlgebraElement c(dim());
  for (int a = 0; a < dim(); ++a) c[a] = real_inner(matrix(a), m) / gram(a);
  return c;
}

AlgebraElement SpAlgebra::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw PreconditionError("bracket of elements from different sp(n)");
  }
  AlgebraElement out = zero();
  for (int a = 0; a < dim(); ++a) {
    if (x[a] == 0.0) continue;
    for (int b = 0; b < dim(); ++b) {
      if (y[b] == 0.0) continue;
      for (const auto& [k, c] : structure(a, b)) out[k] += x[a] * y[b] * c;
    }
  }
  return out;
}

Eigen::MatrixXd SpAlgebra::adjoint(const QMatrix& g) const {
  if (g.rows() != static_cast<std::size_t>(n_) || !is_symplectic(g, kAdjointSymplecticTol)) {
    throw PreconditionError("Ad_g needs g in Sp(" + std::to_string(n_) + ")");
  }
  const QMatrix g_inv = conj_transpose(g);
  Eigen::MatrixXd ad(dim(), dim());
  for (int b = 0; b < dim(); ++b) ad.col(b) = project(g * matrix(b) * g_inv);
  return ad;
}

AlgebraElement SpAlgebra::spheroid(const std::vector<PureQuaternion>& s) const {
  if (s.size() != static_cast<std::size_t>(n_)) {
    throw PreconditionError("spheroid element needs one pure quaternion per diagonal slot");
  }
  AlgebraElement v = zero();
  for (int p = 1; p <= n_; ++p) {
    const auto& sp = s[static_cast<std::size_t>(p - 1)];
    v[position(BasisIndex::dg(Imag::I, p))] = sp.im_i;
    v[position(BasisIndex::dg(Imag::J, p))] = sp.im_j;
    v[position(BasisIndex::dg(Imag::K, p))] = sp.im_k;
  }
  return v;
}

namespace sp2 {

AlgebraElement E() { return SpAlgebra::get(2).unit(BasisIndex::e(1, 2)); }
AlgebraElement S(Imag x) { return SpAlgebra::get(2).unit(BasisIndex::s(x, 1, 2)); }
AlgebraElement H(Imag x) {
  const auto& alg = SpAlgebra::get(2);
  return alg.unit(BasisIndex::dg(x, 1)) - alg.unit(BasisIndex::dg(x, 2));
}
AlgebraElement M(Imag x) {
  const auto& alg = SpAlgebra::get(2);
  return alg.unit(BasisIndex::dg(x, 1)) + alg.unit(BasisIndex::dg(x, 2));
}

}  // namespace sp2

}  // namespace qflag
