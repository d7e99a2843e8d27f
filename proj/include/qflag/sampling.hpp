#ifndef QFLAG_SAMPLING_HPP
#define QFLAG_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qflag/hp1geom.hpp"
#include "qflag/multivector.hpp"
#include "qflag/permutation.hpp"
#include "qflag/qmatrix.hpp"
#include "qflag/quaternion.hpp"
#include "qflag/sp_algebra.hpp"

namespace qflag {

/// Seeded generator used by every sampling routine; runs are reproducible per seed.
using Rng = std::mt19937_64;

/// Gaussian quaternion with independent N(0, sigma^2) components.
Quaternion random_quaternion(Rng& rng, double sigma = 1.0);
Quaternion random_unit_quaternion(Rng& rng);
PureQuaternion random_pure(Rng& rng, double sigma = 1.0);
/// Quaternion with uniformly distributed direction and |q| uniform in [rho_min, rho_max].
Quaternion random_quaternion_in_shell(Rng& rng, double rho_min, double rho_max);

/// Element of sp(n) with N(0, sigma^2) coordinates.
AlgebraElement random_algebra_element(int n, Rng& rng, double sigma = 1.0);
AlgebraElement random_spheroid_element(int n, Rng& rng, double sigma = 1.0);

/// exp of a random sp(n) element: a random point of Sp(n).
QMatrix random_symplectic(int n, Rng& rng, double sigma = 1.0);
/// diag(sigma_1, ..., sigma_n) with unit quaternion entries.
QMatrix random_spheroid(int n, Rng& rng);

/// Unit upper triangular with Gaussian strictly-upper entries.
QMatrix random_unit_upper(int n, Rng& rng, double sigma = 1.0);
/// Unit upper triangular with Gaussian entries only at inversions of w (an element of V_w).
QMatrix random_v_w(const Permutation& w, Rng& rng, double sigma = 1.0);
/// Diagonal with random direction and norm uniform in [0.5, 2].
QMatrix random_invertible_diagonal(int n, Rng& rng);
/// Element of RU: log-uniform positive diagonal in [0.5, 2], Gaussian upper entries (sigma 0.5).
QMatrix random_ru(int n, Rng& rng);
/// Dense Gaussian matrix.
QMatrix random_matrix(int n, Rng& rng, double sigma = 1.0);

Permutation random_permutation(int n, Rng& rng);

/// Sum of `terms` random monomials of the given grade with N(0,1) coefficients.
Multivector random_multivector(int n, int grade, int terms, Rng& rng);

/// Random constant 4-vector on R^dim: dense Gaussian when decomposables == 0, otherwise a sum of
/// that many wedges of four Gaussian vectors.
hp1::ConstantFourVector random_four_vector(int dim, int decomposables, Rng& rng);

}  // namespace qflag

#endif  // QFLAG_SAMPLING_HPP
