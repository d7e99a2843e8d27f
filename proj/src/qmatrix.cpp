#include "qflag/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "qflag/errors.hpp"

namespace qflag {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw PreconditionError("ragged initializer for QMatrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Quaternion> entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("shape mismatch in matrix product");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Quaternion aik = a(i, k);
      if (aik == Quaternion{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

QMatrix conj_transpose(const QMatrix& m) {
  QMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = conj(m(i, j));
  }
  return t;
}

double frobenius_norm(const QMatrix& m) {
  double s = 0.0;
  for (const auto& q : m.entries()) s += norm2(q);
  return std::sqrt(s);
}

double frobenius_distance(const QMatrix& a, const QMatrix& b) { return frobenius_norm(a - b); }

QMatrix inverse(const QMatrix& m) {
  if (!m.is_square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const double threshold = 1e-12 * frobenius_norm(m);
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);

  auto row_axpy = [n](QMatrix& x, std::size_t dst, const Quaternion& c, std::size_t src) {
    // row_dst -= c * row_src
    for (std::size_t j = 0; j < n; ++j) x(dst, j) -= c * x(src, j);
  };

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = norm(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (norm(a(r, col)) > best) {
        best = norm(a(r, col));
        pivot = r;
      }
    }
    if (!(best > threshold)) {
      throw SingularMatrixError("matrix is singular: no pivot in column " + std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Quaternion left_inv = qflag::inverse(a(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = left_inv * a(col, j);
      inv(col, j) = left_inv * inv(col, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Quaternion factor = a(r, col);
      if (factor == Quaternion{}) continue;
      row_axpy(a, r, factor, col);
      row_axpy(inv, r, factor, col);
    }
  }
  return inv;
}

double symplectic_defect(const QMatrix& m) {
  if (!m.is_square()) throw PreconditionError("symplectic test needs a square matrix");
  return frobenius_distance(conj_transpose(m) * m, QMatrix::identity(m.rows()));
}

bool is_symplectic(const QMatrix& m, double tol) { return symplectic_defect(m) <= tol; }

QMatrix expm(const QMatrix& x) {
  if (!x.is_square()) throw PreconditionError("expm needs a square matrix");
  const std::size_t n = x.rows();
  const double nrm = frobenius_norm(x);
  int squarings = 0;
  if (nrm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  }
  const QMatrix y = x * std::ldexp(1.0, -squarings);

  QMatrix result = QMatrix::identity(n);
  QMatrix term = QMatrix::identity(n);
  for (int k = 1; k < 60; ++k) {
    term = term * y;
    term *= 1.0 / k;
    result += term;
    if (frobenius_norm(term) < 1e-13) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

QMatrix permutation_matrix(const Permutation& w) {
  const auto n = static_cast<std::size_t>(w.size());
  QMatrix p(n, n);
  for (int j = 1; j <= w.size(); ++j) {
    p(static_cast<std::size_t>(w(j) - 1), static_cast<std::size_t>(j - 1)) = 1.0;
  }
  return p;
}

QMatrix embed_sp2(const QMatrix& a, int r, int n) {
  if (a.rows() != 2 || a.cols() != 2) throw PreconditionError("embed_sp2 expects a 2x2 block");
  if (r < 1 || r >= n) {
    throw PreconditionError("embedding row " + std::to_string(r) + " out of range for n = " +
                            std::to_string(n));
  }
  QMatrix out = QMatrix::identity(static_cast<std::size_t>(n));
  const auto base = static_cast<std::size_t>(r - 1);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(base + i, base + j) = a(i, j);
  }
  return out;
}

double max_below_diagonal(const QMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < std::min(i, m.cols()); ++j) worst = std::max(worst, norm(m(i, j)));
  }
  return worst;
}

std::ostream& operator<<(std::ostream& os, const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

}  // namespace qflag
