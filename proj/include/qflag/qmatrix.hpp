#ifndef QFLAG_QMATRIX_HPP
#define QFLAG_QMATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "qflag/permutation.hpp"
#include "qflag/quaternion.hpp"

namespace qflag {

/// Dense row-major matrix over the quaternions. Indices are 0-based.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const Quaternion> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Quaternion> entries() const { return data_; }

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, double s) { return a *= s; }
  friend QMatrix operator*(double s, QMatrix a) { return a *= s; }
  /// (A*B)_{ij} = sum_k A_{ik} B_{kj}, left factor first.
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix conj_transpose(const QMatrix& m);

/// Frobenius norm sqrt(sum |m_ij|^2); the single matrix norm used throughout.
double frobenius_norm(const QMatrix& m);
double frobenius_distance(const QMatrix& a, const QMatrix& b);

/// Gauss-Jordan inverse with partial pivoting. Row operations multiply from the left.
/// Throws SingularMatrixError when no pivot exceeds 1e-12 * ||m||_F.
QMatrix inverse(const QMatrix& m);

/// ||m^* m - I||_F.
double symplectic_defect(const QMatrix& m);
bool is_symplectic(const QMatrix& m, double tol);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
QMatrix expm(const QMatrix& x);

/// (P_w)_{i,j} = delta_{i, w(j)}.
QMatrix permutation_matrix(const Permutation& w);

/// Places the 2x2 matrix a into rows/columns {r, r+1} (1-indexed, 1 <= r < n) of I_n.
QMatrix embed_sp2(const QMatrix& a, int r, int n);

/// Largest |m_ij| over entries strictly below the diagonal.
double max_below_diagonal(const QMatrix& m);

std::ostream& operator<<(std::ostream& os, const QMatrix& m);

}  // namespace qflag

#endif  // QFLAG_QMATRIX_HPP
