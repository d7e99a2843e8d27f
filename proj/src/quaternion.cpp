#include "qflag/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace qflag {

Quaternion exp_pure(const PureQuaternion& s) {
  const double theta = std::sqrt(s.im_i * s.im_i + s.im_j * s.im_j + s.im_k * s.im_k);
  if (theta == 0.0) {
    return {1.0};
  }
  const double scale = std::sin(theta) / theta;
  return {std::cos(theta), scale * s.im_i, scale * s.im_j, scale * s.im_k};
}

RadialSplit radial_split(const Quaternion& v) {
  const double rho = norm(v);
  if (rho == 0.0) {
    return {0.0, Quaternion{1.0}};
  }
  return {rho, v / rho};
}

double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  return std::max({std::abs(a.re - b.re), std::abs(a.im_i - b.im_i), std::abs(a.im_j - b.im_j),
                   std::abs(a.im_k - b.im_k)});
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.re << ", " << q.im_i << ", " << q.im_j << ", " << q.im_k << ']';
}

}  // namespace qflag
