#ifndef QFLAG_DECOMP_HPP
#define QFLAG_DECOMP_HPP

#include <vector>

#include "qflag/permutation.hpp"
#include "qflag/qmatrix.hpp"
#include "qflag/quaternion.hpp"

namespace qflag {

/// Strict Bruhat normal form G = U * D * P_w * V.
///
/// U and V are unit upper triangular, D is diagonal with nonzero entries, and V is normalized
/// so that P_w V P_w^{-1} is unit lower triangular. Under that normalization every factor is
/// unique, so the output does not depend on the elimination order.
struct BruhatForm {
  QMatrix U;
  QMatrix D;
  Permutation w;
  QMatrix V;

  QMatrix reconstruct() const;
};

/// The (w, phases) pair that labels a leaf: phases[i] = D_i / |D_i| of the strict Bruhat form.
struct LeafSignature {
  Permutation w;
  std::vector<Quaternion> phases;
};

/// Threshold below which a pivot candidate counts as zero, relative to ||G||_F.
inline constexpr double kBruhatPivotRelTol = 1e-10;

/// Strict Bruhat normal form by column-wise elimination. Throws SingularMatrixError.
BruhatForm bruhat(const QMatrix& g);

/// The Dieudonné determinant realized as prod |D_i| of the strict Bruhat form.
double dieudonne_det(const QMatrix& g);

/// True when V is unit upper triangular and only has entries at inversions (a < b, w(a) > w(b)),
/// i.e. P_w V P_w^{-1} is unit lower triangular; entries count as zero below tol.
bool in_v_w(const QMatrix& v, const Permutation& w, double tol);

/// G = K * R * Uu with K in Sp(n), R positive real diagonal, Uu unit upper triangular.
struct IwasawaForm {
  QMatrix K;
  QMatrix R;
  QMatrix Uu;

  QMatrix reconstruct() const { return K * R * Uu; }
};

/// Gram-Schmidt on the columns with right-side coefficients and one re-orthogonalization pass.
IwasawaForm iwasawa(const QMatrix& g);

/// True when g is upper triangular with positive real diagonal, up to tol * max(1, ||g||_F).
bool in_ru(const QMatrix& g, double tol);

/// The dressing action (G, K) -> K' where G K = K' R U. G must lie in RU and K in Sp(n).
QMatrix dress(const QMatrix& g, const QMatrix& k);

/// Signature (w, phases) of a symplectic matrix. Throws PreconditionError if k is not in Sp(n).
LeafSignature leaf_signature(const QMatrix& k);

/// Largest |phase_a[i] - phase_b[i]| over i, compared as quaternions; infinity if w differs.
double signature_distance(const LeafSignature& a, const LeafSignature& b);

}  // namespace qflag

#endif  // QFLAG_DECOMP_HPP
