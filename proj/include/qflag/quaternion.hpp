#ifndef QFLAG_QUATERNION_HPP
#define QFLAG_QUATERNION_HPP

#include <cmath>
#include <iosfwd>

namespace qflag {

/// A real quaternion re + im_i*i + im_j*j + im_k*k with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
  double re = 0.0;
  double im_i = 0.0;
  double im_j = 0.0;
  double im_k = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double r) : re(r) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double r, double i, double j, double k)
      : re(r), im_i(i), im_j(j), im_k(k) {}

  static constexpr Quaternion unit_i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion unit_j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion unit_k() { return {0, 0, 0, 1}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    re += o.re;
    im_i += o.im_i;
    im_j += o.im_j;
    im_k += o.im_k;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    re -= o.re;
    im_i -= o.im_i;
    im_j -= o.im_j;
    im_k -= o.im_k;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    re *= s;
    im_i *= s;
    im_j *= s;
    im_k *= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator-(const Quaternion& a) {
    return {-a.re, -a.im_i, -a.im_j, -a.im_k};
  }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

  // Hamilton product; the order of the factors matters.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.re * b.re - a.im_i * b.im_i - a.im_j * b.im_j - a.im_k * b.im_k,
            a.re * b.im_i + a.im_i * b.re + a.im_j * b.im_k - a.im_k * b.im_j,
            a.re * b.im_j - a.im_i * b.im_k + a.im_j * b.re + a.im_k * b.im_i,
            a.re * b.im_k + a.im_i * b.im_j - a.im_j * b.im_i + a.im_k * b.re};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// The imaginary part of a quaternion, kept as its own type so exp() can only see pure inputs.
struct PureQuaternion {
  double im_i = 0.0;
  double im_j = 0.0;
  double im_k = 0.0;

  constexpr Quaternion as_quaternion() const { return {0.0, im_i, im_j, im_k}; }
  friend constexpr PureQuaternion operator-(const PureQuaternion& s) {
    return {-s.im_i, -s.im_j, -s.im_k};
  }
};

constexpr Quaternion conj(const Quaternion& q) { return {q.re, -q.im_i, -q.im_j, -q.im_k}; }

constexpr double norm2(const Quaternion& q) {
  return q.re * q.re + q.im_i * q.im_i + q.im_j * q.im_j + q.im_k * q.im_k;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }

/// Two-sided inverse conj(q)/|q|^2. Caller guarantees q != 0.
constexpr Quaternion inverse(const Quaternion& q) { return conj(q) / norm2(q); }

constexpr PureQuaternion imag(const Quaternion& q) { return {q.im_i, q.im_j, q.im_k}; }

/// exp(s) = cos|s| + (s/|s|) sin|s| for a purely imaginary s; always a unit quaternion.
Quaternion exp_pure(const PureQuaternion& s);

/// Polar split v = rho * unit with rho = |v|. At v = 0 the direction is fixed to 1.
struct RadialSplit {
  double rho = 0.0;
  Quaternion unit{1.0};
};

RadialSplit radial_split(const Quaternion& v);

/// Largest absolute component difference.
double max_abs_diff(const Quaternion& a, const Quaternion& b);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qflag

#endif  // QFLAG_QUATERNION_HPP
