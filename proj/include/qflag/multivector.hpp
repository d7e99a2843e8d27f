#ifndef QFLAG_MULTIVECTOR_HPP
#define QFLAG_MULTIVECTOR_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qflag/sp_algebra.hpp"

namespace qflag {

/// Pruning threshold applied after every multivector operation.
inline constexpr double kMultivectorPrune = 1e-14;

/// A grade-k element of the exterior algebra of sp(n).
///
/// Terms are keyed by a bitmask of basis positions; the set bits, read in increasing order,
/// are the sorted k-tuple, so antisymmetry is structural.
class Multivector {
 public:
  using Mask = std::uint64_t;

  Multivector(int n, int grade);

  /// The grade-1 multivector of an algebra element.
  static Multivector from_element(int n, const AlgebraElement& x);
  /// c * B_{i_1} ^ ... ^ B_{i_k} for arbitrary (unsorted) positions; zero on repeats.
  static Multivector monomial(int n, std::span<const int> positions, double c = 1.0);

  int n() const { return n_; }
  int grade() const { return grade_; }
  const std::map<Mask, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c to the coefficient of the sorted tuple given by mask; prunes small results.
  void add(Mask mask, double c);
  double coefficient(Mask mask) const;
  double coefficient(std::span<const int> sorted_positions) const;

  double max_abs() const;
  /// Drops terms with |c| <= tol.
  void prune(double tol = kMultivectorPrune);

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }

 private:
  void check_compatible(const Multivector& o) const;

  int n_;
  int grade_;
  std::map<Mask, double> terms_;
};

/// Sorted positions of a mask.
std::vector<int> mask_positions(Multivector::Mask mask);
Multivector::Mask positions_mask(std::span<const int> positions);
/// Sign of e_a ^ e_b relative to the sorted monomial of a | b; 0 if they share an index.
int wedge_sign(Multivector::Mask a, Multivector::Mask b);

Multivector wedge(const Multivector& a, const Multivector& b);
/// x_1 ^ ... ^ x_k for algebra elements.
Multivector wedge_elements(int n, std::span<const AlgebraElement> factors);

/// Largest coefficient of a - b.
double max_abs_diff(const Multivector& a, const Multivector& b);

/// The decomposable-term formula
///   [x_1^..^x_p, y_1^..^y_q] = sum_{a,b} (-1)^{a+b} [x_a, y_b] ^ x_1..^x_a..x_p ^ y_1..^y_b..y_q
/// (1-based a, b), extended bilinearly.
Multivector schouten_decomposable(const Multivector& p, const Multivector& q);

/// Schouten bracket in the graded convention
///   [P,Q] = (-1)^{pq} [Q,P],
///   [P, Q^R] = [P,Q]^R + (-1)^{pq+q} Q^[P,R],
///   (-1)^{p(r-1)}[P,[Q,R]] + (-1)^{q(p-1)}[Q,[R,P]] + (-1)^{r(q-1)}[R,[P,Q]] = 0.
/// Equal to (-1)^{p+1} schouten_decomposable(P, Q): identical for odd p, including the
/// Lie bracket and ad_X, and of opposite sign for even p.
Multivector schouten(const Multivector& p, const Multivector& q);

/// Largest coefficient of [P,Q] - (-1)^{pq}[Q,P].
double antisymmetry_residual(const Multivector& p, const Multivector& q);
/// Largest coefficient of [P,Q^R] - [P,Q]^R - (-1)^{pq+q} Q^[P,R].
double leibniz_residual(const Multivector& p, const Multivector& q, const Multivector& r);
/// Largest coefficient of the graded Jacobi sum above.
double jacobi_residual(const Multivector& p, const Multivector& q, const Multivector& r);

/// Lambda = sum_{p<q} E(p,q) ^ S(i;p,q) ^ S(j;p,q) ^ S(k;p,q). Requires n >= 2.
Multivector lambda_element(int n);

/// ad_X P: the Leibniz extension replacing one factor at a time by [X, factor].
Multivector ad_multivector(const AlgebraElement& x, const Multivector& p);

/// Linearization X -> ad_X Lambda of pi = Lambda^L - Lambda^R at the identity.
Multivector intrinsic_derivative(const AlgebraElement& x, int n);

/// How ad_group expands the exterior power of Ad_g.
enum class AdRoute {
  Auto,     ///< cheapest of the two below
  Minors,   ///< per term, coefficient at T is the T x S minor of Ad_g
  Tensor,   ///< dense antisymmetric tensor with Ad_g applied slot by slot
};

/// Ad_g applied to every wedge factor of P. g must be symplectic (1e-8).
Multivector ad_group(const QMatrix& g, const Multivector& p, AdRoute route = AdRoute::Auto);

/// pi(g) = Ad_g Lambda - Lambda, the right-trivialized value of Lambda^L - Lambda^R at g.
Multivector pi_trivialized(const QMatrix& g);

/// The image of a multivector over sp(2) under the algebra embedding at rows {r, r+1} of sp(n).
Multivector embed_sp2_multivector(const Multivector& p, int r, int n);

/// A covector on sp(n) in the dual basis.
struct DualVector {
  int n = 2;
  Eigen::VectorXd coeffs;

  static DualVector basis(int n, int a);
};

/// <z_1 ^ ... ^ z_k, P> = sum_T c_T det[z_a(t_b)].
double pairing(std::span<const DualVector> covectors, const Multivector& p);

/// The 4-bracket on sp(n)^*, dual to the intrinsic derivative:
/// <[z1,z2,z3,z4], X> = <z1^z2^z3^z4, ad_X Lambda>.
DualVector four_bracket(const DualVector& z1, const DualVector& z2, const DualVector& z3,
                        const DualVector& z4);

}  // namespace qflag

#endif  // QFLAG_MULTIVECTOR_HPP
