#ifndef QFLAG_HP1GEOM_HPP
#define QFLAG_HP1GEOM_HPP

#include <Eigen/Dense>
#include <array>
#include <map>
#include <optional>

#include "qflag/multivector.hpp"
#include "qflag/qmatrix.hpp"
#include "qflag/quaternion.hpp"

/// Chart-level geometry on HP^1 = Sph \ Sp(2).
///
/// A coset Sph*M is read off from the second row of M, which is defined up to a unit
/// quaternion on the left:
///   South chart  v(M) = M21^{-1} M22   (the 4-cell, v = 0 is the coset of P_(12))
///   North chart  u(M) = M22^{-1} M21   (u = 0 is the identity coset)
/// On the overlap u = v^{-1}. Tangent vectors of Sp(2) are identified with sp(2) by right
/// translation, X -> X*M.
namespace qflag::hp1 {

enum class Chart { South, North };

struct ChartPoint {
  Chart chart = Chart::South;
  Quaternion coord;
};

/// Below this |denominator| a chart map is undefined.
inline constexpr double kChartBoundaryTol = 1e-10;

/// Chart coordinate of the coset of a 2x2 matrix. Throws ChartBoundaryError.
Quaternion chart_coordinate(const QMatrix& m, Chart chart);

/// Symplectic representative of the coset:
///   South: k_v = (1+|v|^2)^{-1/2} [[-conj(v), 1], [1, v]]
///   North: (1+|u|^2)^{-1/2} [[1, -conj(u)], [u, 1]]
QMatrix coset_rep(const ChartPoint& p);

Eigen::Vector4d to_vec4(const Quaternion& q);
Quaternion from_vec4(const Eigen::Vector4d& v);

/// Real 4 x dim sp(2) matrix whose column b is d/dt chart(exp(t B_b) k) at t = 0.
using ChartJacobian = Eigen::Matrix<double, 4, Eigen::Dynamic>;

/// Closed-form derivative of the chart along X*k for an arbitrary k in the chart domain.
Eigen::Vector4d chart_velocity(const QMatrix& k, Chart chart, const QMatrix& x);
ChartJacobian action_jacobian_at(const QMatrix& k, Chart chart);
ChartJacobian action_jacobian(const ChartPoint& p);
/// Central finite differences of the same map, for cross-checks.
ChartJacobian action_jacobian_fd(const ChartPoint& p, double h = 1e-6);

/// Coefficient of d1^d2^d3^d4 in the pushforward of a grade-4 multivector over sp(2).
double pushforward_coeff_at(const QMatrix& k, Chart chart, const Multivector& field);
double pushforward_coeff(const ChartPoint& p, const Multivector& field);

/// A 4-vector f * d1^d2^d3^d4 at a chart point, with the dual 4-form coefficient 1/f.
struct FieldSample {
  ChartPoint at;
  double coeff = 0.0;
  std::optional<double> dual_coeff;
};

/// The Bruhat field: pushforward of Ad_k Lambda - Lambda at the coset representative k.
FieldSample bruhat_field(const ChartPoint& p);
/// bruhat_field at the South pole v = 0, the normalization point of the radial profile.
double bruhat_reference_coeff();
/// bruhat_field(p).coeff / bruhat_reference_coeff().
double normalized_bruhat(const ChartPoint& p);

/// Invariant field in the South chart, normalized to 1 at v = 0: (1 + rho^2)^4.
FieldSample invariant_field(const ChartPoint& p);

/// Closed-form radial profile (1 + rho^2)(1 + 3 rho^4) of the normalized Bruhat field.
double bruhat_profile_closed_form(double rho);
/// Ratio of the two fields, (1 + 3 rho^4) / (1 + rho^2)^3.
double ratio_closed_form(double rho);

/// A constant 4-vector on R^N, coefficients over sorted index quadruples.
struct ConstantFourVector {
  int dim = 4;
  std::map<std::array<int, 4>, double> coeffs;
};

/// The N x C(N,3) matrix of contractions with the basis 3-covectors e^a^e^b^e^c:
/// column (a,b,c) has component d = <e^a ^ e^b ^ e^c ^ e^d, xi>.
Eigen::MatrixXd contraction_matrix(const ConstantFourVector& xi);
/// Rank of contraction_matrix, counting singular values above rel_tol * max.
int contraction_rank(const ConstantFourVector& xi, double rel_tol = 1e-9);

/// Rank of the Bruhat field at a chart point.
int rank_at(const ChartPoint& p);

/// iota(df1 ^ df2 ^ df3) applied to the Bruhat field: component d is f det[df1; df2; df3; e_d].
Eigen::Vector4d hamiltonian_field(const ChartPoint& p, const Eigen::Vector4d& df1,
                                  const Eigen::Vector4d& df2, const Eigen::Vector4d& df3);

/// Same contraction for an explicit coefficient f.
Eigen::Vector4d hamiltonian_field(double coeff, const Eigen::Vector4d& df1,
                                  const Eigen::Vector4d& df2, const Eigen::Vector4d& df3);

/// Both sides of the Lie-derivative identity for the right action of exp(tX) on HP^1.
struct LieDerivativeSides {
  double lhs = 0.0;  ///< d/dt of the pulled-back field coefficient, central differences
  double rhs = 0.0;  ///< pushforward of Ad_k(ad_X Lambda)
  double residual() const { return std::abs(lhs - rhs); }
};

inline constexpr double kLieDerivativeStep = 1e-4;

LieDerivativeSides lie_derivative_sides(const ChartPoint& p, const AlgebraElement& x,
                                        double h = kLieDerivativeStep);
/// |lhs - rhs| of lie_derivative_sides.
double lie_derivative_check(const ChartPoint& p, const AlgebraElement& x);

}  // namespace qflag::hp1

#endif  // QFLAG_HP1GEOM_HPP
