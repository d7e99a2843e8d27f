#include "qflag/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qflag/errors.hpp"

namespace qflag {

namespace {

constexpr double kIwasawaSingularRelTol = 1e-12;
constexpr double kRuTol = 1e-10;
constexpr double kSymplecticInputTol = 1e-8;

// Right inner product <x, y> = sum conj(x_i) y_i over columns of a matrix.
Quaternion column_inner(const QMatrix& x, std::size_t cx, const QMatrix& y, std::size_t cy) {
  Quaternion s;
  for (std::size_t i = 0; i < x.rows(); ++i) s += conj(x(i, cx)) * y(i, cy);
  return s;
}

}  // namespace

QMatrix BruhatForm::reconstruct() const { return U * D * permutation_matrix(w) * V; }

BruhatForm bruhat(const QMatrix& g) {
  if (!g.is_square()) throw PreconditionError("Bruhat form needs a square matrix");
  const std::size_t n = g.rows();
  const double threshold = kBruhatPivotRelTol * frobenius_norm(g);

  // Invariant: g = U * a * V, with a driven towards the monomial matrix D * P_w.
  QMatrix a = g;
  QMatrix u = QMatrix::identity(n);
  QMatrix v = QMatrix::identity(n);
  constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pivot_row(n, kUnassigned);  // column j -> row w(j)
  std::vector<bool> row_taken(n, false);

  for (std::size_t j = 0; j < n; ++j) {
    std::size_t r = kUnassigned;
    for (std::size_t i = n; i-- > 0;) {
      if (!row_taken[i] && norm(a(i, j)) > threshold) {
        r = i;
        break;
      }
    }
    if (r == kUnassigned) {
      throw SingularMatrixError("matrix is singular: column " + std::to_string(j) +
                                " has no pivot");
    }

    // Entries in earlier pivot rows below r are cleared by column operations
    // col_j -= col_jp * c. These sit at inversions (jp < j, w(jp) > w(j)), so V stays in V_w.
    for (std::size_t jp = 0; jp < j; ++jp) {
      const std::size_t row = pivot_row[jp];
      if (row < r && row != kUnassigned) continue;
      const Quaternion c = inverse(a(row, jp)) * a(row, j);
      a(row, j) = 0.0;  // col jp is zero outside its pivot row
      // g = U a V and a <- a F with F = I - c e_jp e_j^T, so V <- F^{-1} V = (I + c e_jp e_j^T) V.
      for (std::size_t k = 0; k < n; ++k) v(jp, k) += c * v(j, k);
    }

    // Everything above the pivot in column j is cleared by row operations row_i -= c * row_r.
    const Quaternion pivot_inv = inverse(a(r, j));
    for (std::size_t i = 0; i < r; ++i) {
      if (a(i, j) == Quaternion{}) continue;
      const Quaternion c = a(i, j) * pivot_inv;
      for (std::size_t k = j; k < n; ++k) a(i, k) -= c * a(r, k);
      a(i, j) = 0.0;
      // a <- E a with E = I - c e_i e_r^T, so U <- U E^{-1} = U (I + c e_i e_r^T).
      for (std::size_t k = 0; k < n; ++k) u(k, r) += u(k, i) * c;
    }

    pivot_row[j] = r;
    row_taken[r] = true;
  }

  std::vector<int> one_line(n);
  std::vector<Quaternion> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    one_line[j] = static_cast<int>(pivot_row[j]) + 1;
    d[pivot_row[j]] = a(pivot_row[j], j);
  }
  return BruhatForm{std::move(u), QMatrix::diagonal(d), Permutation(std::move(one_line)),
                    std::move(v)};
}

double dieudonne_det(const QMatrix& g) {
  const BruhatForm form = bruhat(g);
  double det = 1.0;
  for (std::size_t i = 0; i < form.D.rows(); ++i) det *= norm(form.D(i, i));
  return det;
}

bool in_v_w(const QMatrix& v, const Permutation& w, double tol) {
  const auto n = static_cast<std::size_t>(w.size());
  if (v.rows() != n || v.cols() != n) return false;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Quaternion& x = v(a, b);
      if (a == b) {
        if (max_abs_diff(x, Quaternion{1.0}) > tol) return false;
      } else if (a > b) {
        if (norm(x) > tol) return false;
      } else {
        const bool inversion = w(static_cast<int>(a) + 1) > w(static_cast<int>(b) + 1);
        if (!inversion && norm(x) > tol) return false;
      }
    }
  }
  return true;
}

IwasawaForm iwasawa(const QMatrix& g) {
  if (!g.is_square()) throw PreconditionError("Iwasawa decomposition needs a square matrix");
  const std::size_t n = g.rows();
  const double threshold = kIwasawaSingularRelTol * frobenius_norm(g);
  QMatrix k = g;
  QMatrix t(n, n);  // g = k * t, t upper triangular

  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const Quaternion c = column_inner(k, i, k, j);
        for (std::size_t r = 0; r < n; ++r) k(r, j) -= k(r, i) * c;
        t(i, j) += c;
      }
    }
    double nrm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm2 += norm2(k(r, j));
    const double nrm = std::sqrt(nrm2);
    if (!(nrm > threshold)) {
      throw SingularMatrixError("matrix is singular: column " + std::to_string(j) +
                                " is dependent on earlier columns");
    }
    for (std::size_t r = 0; r < n; ++r) k(r, j) = k(r, j) / nrm;
    t(j, j) = nrm;
  }

  QMatrix r(n, n);
  QMatrix uu = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = t(i, i).re;
    r(i, i) = ri;
    for (std::size_t j = i + 1; j < n; ++j) uu(i, j) = t(i, j) / ri;
  }
  return IwasawaForm{std::move(k), std::move(r), std::move(uu)};
}

bool in_ru(const QMatrix& g, double tol) {
  if (!g.is_square()) return false;
  const double scale = tol * std::max(1.0, frobenius_norm(g));
  if (max_below_diagonal(g) > scale) return false;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    const Quaternion& d = g(i, i);
    if (!(d.re > scale)) return false;
    if (norm(Quaternion{0.0, d.im_i, d.im_j, d.im_k}) > scale) return false;
  }
  return true;
}

QMatrix dress(const QMatrix& g, const QMatrix& k) {
  if (!g.is_square() || !k.is_square() || g.rows() != k.rows()) {
    throw PreconditionError("dress needs square matrices of equal size");
  }
  if (!in_ru(g, kRuTol)) {
    throw PreconditionError("dress: G is not upper triangular with positive real diagonal");
  }
  if (!is_symplectic(k, kSymplecticInputTol)) {
    throw PreconditionError("dress: K is not in Sp(n)");
  }
  return iwasawa(g * k).K;
}

LeafSignature leaf_signature(const QMatrix& k) {
  if (!k.is_square() || !is_symplectic(k, kSymplecticInputTol)) {
    throw PreconditionError("leaf signature needs a matrix in Sp(n)");
  }
  BruhatForm form = bruhat(k);
  LeafSignature sig{std::move(form.w), {}};
  sig.phases.reserve(form.D.rows());
  for (std::size_t i = 0; i < form.D.rows(); ++i) {
    sig.phases.push_back(radial_split(form.D(i, i)).unit);
  }
  return sig;
}

double signature_distance(const LeafSignature& a, const LeafSignature& b) {
  if (!(a.w == b.w) || a.phases.size() != b.phases.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.phases.size(); ++i) {
    worst = std::max(worst, norm(a.phases[i] - b.phases[i]));
  }
  return worst;
}

}  // namespace qflag
