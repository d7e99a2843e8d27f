#ifndef QFLAG_SP_ALGEBRA_HPP
#define QFLAG_SP_ALGEBRA_HPP

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qflag/qmatrix.hpp"
#include "qflag/quaternion.hpp"

namespace qflag {

/// One of the three imaginary units.
enum class Imag { I = 0, J = 1, K = 2 };

Quaternion unit_of(Imag x);
char name_of(Imag x);

/// A basis element of sp(n).
///
///   E(p,q)     : +1 at (p,q), -1 at (q,p)
///   S(x;p,q)   : x at (p,q) and at (q,p)
///   Dg(x;p)    : x at (p,p)
///
/// Indices p < q are 1-based. For n = 2 the classical H_x = Dg(x;1) - Dg(x;2) and
/// M_x = Dg(x;1) + Dg(x;2) are combinations, not basis members.
struct BasisIndex {
  enum class Kind { E, S, Dg };
  Kind kind = Kind::E;
  Imag x = Imag::I;  // unused for E
  int p = 1;
  int q = 2;  // unused for Dg

  static BasisIndex e(int p, int q) { return {Kind::E, Imag::I, p, q}; }
  static BasisIndex s(Imag x, int p, int q) { return {Kind::S, x, p, q}; }
  static BasisIndex dg(Imag x, int p) { return {Kind::Dg, x, p, 0}; }

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Canonical text form: "E(p,q)", "S(i;p,q)", "Dg(j;p)".
std::string to_string(const BasisIndex& b);

/// Coordinates of an element of sp(n) in the basis of SpAlgebra.
using AlgebraElement = Eigen::VectorXd;

/// sp(n) = {X : X + X^* = 0} with a fixed basis and precomputed structure constants.
///
/// Basis order: for each pair p < q (lexicographic) the four elements E, S_i, S_j, S_k,
/// followed by Dg(i;1), Dg(j;1), Dg(k;1), ..., Dg(k;n). Instances are immutable and shared.
class SpAlgebra {
 public:
  /// Largest supported n; multivector masks need dim sp(n) <= 64.
  static constexpr int kMaxN = 5;

  /// Cached instance for n (2 <= n <= kMaxN); safe to call concurrently.
  static const SpAlgebra& get(int n);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  const BasisIndex& index(int a) const { return basis_[static_cast<std::size_t>(a)]; }
  int position(const BasisIndex& b) const;
  std::string name(int a) const { return to_string(index(a)); }
  /// Inverse of name(); throws PreconditionError on unknown or out-of-range names.
  int position(std::string_view name) const;

  const QMatrix& matrix(int a) const { return matrices_[static_cast<std::size_t>(a)]; }
  /// <B_a, B_a> under <A, B> = Re tr(A^* B).
  double gram(int a) const { return gram_[static_cast<std::size_t>(a)]; }

  AlgebraElement zero() const { return AlgebraElement::Zero(dim()); }
  AlgebraElement unit(int a) const;
  AlgebraElement unit(const BasisIndex& b) const { return unit(position(b)); }

  QMatrix to_matrix(const AlgebraElement& x) const;
  /// Orthogonal projection onto sp(n) coordinates; the hermitian part of m is discarded.
  AlgebraElement project(const QMatrix& m) const;

  /// [B_a, B_b] as sparse (index, coefficient) pairs.
  const std::vector<std::pair<int, double>>& structure(int a, int b) const {
    return structure_[static_cast<std::size_t>(a * dim() + b)];
  }
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

  /// Matrix of Ad_g = g (.) g^{-1} in basis coordinates (column b is Ad_g B_b).
  /// g must be symplectic to 1e-8; throws PreconditionError otherwise.
  Eigen::MatrixXd adjoint(const QMatrix& g) const;

  /// Element of the spheroid algebra: diag(s_1, ..., s_n) with pure s_p.
  AlgebraElement spheroid(const std::vector<PureQuaternion>& s) const;
  bool is_spheroid_position(int a) const { return index(a).kind == BasisIndex::Kind::Dg; }

 private:
  explicit SpAlgebra(int n);

  int n_;
  std::vector<BasisIndex> basis_;
  std::vector<QMatrix> matrices_;
  std::vector<double> gram_;
  std::vector<std::vector<std::pair<int, double>>> structure_;
};

/// The classical sp(2) generators, as coordinate vectors in SpAlgebra::get(2).
namespace sp2 {
AlgebraElement E();
AlgebraElement S(Imag x);
AlgebraElement H(Imag x);
AlgebraElement M(Imag x);
}  // namespace sp2

}  // namespace qflag

#endif  // QFLAG_SP_ALGEBRA_HPP
