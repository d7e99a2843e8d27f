#include "qflag/hp1geom.hpp"

#include <algorithm>
#include <cmath>

#include "qflag/errors.hpp"
#include "qflag/sp_algebra.hpp"

namespace qflag::hp1 {

namespace {

void require_2x2(const QMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw PreconditionError("expected a 2x2 matrix");
}

Quaternion checked_inverse(const Quaternion& q) {
  if (norm(q) <= kChartBoundaryTol) throw ChartBoundaryError("point lies on the chart boundary");
  return inverse(q);
}

// Quaternion entries (denominator, numerator) of the chart map.
struct ChartEntries {
  std::size_t den_col;
  std::size_t num_col;
};

ChartEntries entries_of(Chart chart) {
  return chart == Chart::South ? ChartEntries{0, 1} : ChartEntries{1, 0};
}

}  // namespace

Quaternion chart_coordinate(const QMatrix& m, Chart chart) {
  require_2x2(m);
  const auto e = entries_of(chart);
  return checked_inverse(m(1, e.den_col)) * m(1, e.num_col);
}

QMatrix coset_rep(const ChartPoint& p) {
  const Quaternion c = p.coord;
  const double s = 1.0 / std::sqrt(1.0 + norm2(c));
  if (p.chart == Chart::South) return QMatrix{{-conj(c), 1.0}, {1.0, c}} * s;
  return QMatrix{{1.0, -conj(c)}, {c, 1.0}} * s;
}

Eigen::Vector4d to_vec4(const Quaternion& q) { return {q.re, q.im_i, q.im_j, q.im_k}; }

Quaternion from_vec4(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

Eigen::Vector4d chart_velocity(const QMatrix& k, Chart chart, const QMatrix& x) {
  require_2x2(k);
  const auto e = entries_of(chart);
  const QMatrix y = x * k;
  const Quaternion a_inv = checked_inverse(k(1, e.den_col));
  const Quaternion dot =
      -a_inv * y(1, e.den_col) * a_inv * k(1, e.num_col) + a_inv * y(1, e.num_col);
  return to_vec4(dot);
}

ChartJacobian action_jacobian_at(const QMatrix& k, Chart chart) {
  const auto& alg = SpAlgebra::get(2);
  ChartJacobian j(4, alg.dim());
  for (int b = 0; b < alg.dim(); ++b) j.col(b) = chart_velocity(k, chart, alg.matrix(b));
  return j;
}

ChartJacobian action_jacobian(const ChartPoint& p) { return action_jacobian_at(coset_rep(p), p.chart); }

ChartJacobian action_jacobian_fd(const ChartPoint& p, double h) {
  const auto& alg = SpAlgebra::get(2);
  const QMatrix k = coset_rep(p);
  ChartJacobian j(4, alg.dim());
  for (int b = 0; b < alg.dim(); ++b) {
    const QMatrix plus = expm(alg.matrix(b) * h) * k;
    const QMatrix minus = expm(alg.matrix(b) * -h) * k;
    j.col(b) = (to_vec4(chart_coordinate(plus, p.chart)) -
                to_vec4(chart_coordinate(minus, p.chart))) /
               (2.0 * h);
  }
  return j;
}

double pushforward_coeff_at(const QMatrix& k, Chart chart, const Multivector& field) {
  if (field.n() != 2 || field.grade() != 4) {
    throw PreconditionError("pushforward needs a grade-4 multivector over sp(2)");
  }
  if (field.is_zero()) return 0.0;
  const ChartJacobian j = action_jacobian_at(k, chart);
  double total = 0.0;
  for (const auto& [mask, c] : field.terms()) {
    const auto pos = mask_positions(mask);
    Eigen::Matrix4d m;
    for (int a = 0; a < 4; ++a) m.col(a) = j.col(pos[static_cast<std::size_t>(a)]);
    total += c * m.determinant();
  }
  return total;
}

double pushforward_coeff(const ChartPoint& p, const Multivector& field) {
  return pushforward_coeff_at(coset_rep(p), p.chart, field);
}

FieldSample bruhat_field(const ChartPoint& p) {
  const QMatrix k = coset_rep(p);
  FieldSample s{p, pushforward_coeff_at(k, p.chart, pi_trivialized(k)), std::nullopt};
  if (s.coeff != 0.0) s.dual_coeff = 1.0 / s.coeff;
  return s;
}

double bruhat_reference_coeff() {
  static const double ref = bruhat_field({Chart::South, Quaternion{}}).coeff;
  return ref;
}

double normalized_bruhat(const ChartPoint& p) { return bruhat_field(p).coeff / bruhat_reference_coeff(); }

FieldSample invariant_field(const ChartPoint& p) {
  if (p.chart != Chart::South) throw PreconditionError("invariant_field is defined on the South chart");
  const double r2 = norm2(p.coord);
  const double c = std::pow(1.0 + r2, 4);
  return {p, c, 1.0 / c};
}

double bruhat_profile_closed_form(double rho) {
  const double r2 = rho * rho;
  return (1.0 + r2) * (1.0 + 3.0 * r2 * r2);
}

double ratio_closed_form(double rho) {
  const double r2 = rho * rho;
  return (1.0 + 3.0 * r2 * r2) / std::pow(1.0 + r2, 3);
}

Eigen::MatrixXd contraction_matrix(const ConstantFourVector& xi) {
  const int n = xi.dim;
  if (n < 4) throw PreconditionError("a 4-vector needs dimension at least 4");
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) triples.push_back({a, b, c});

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(triples.size()));
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [a, b, c] = triples[t];
    for (int d = 0; d < n; ++d) {
      if (d == a || d == b || d == c) continue;
      // e^a^e^b^e^c^e^d = (-1)^{#{a,b,c} above d} times the sorted monomial.
      const int above = (a > d) + (b > d) + (c > d);
      std::array<int, 4> key{a, b, c, d};
      std::sort(key.begin(), key.end());
      const auto it = xi.coeffs.find(key);
      if (it == xi.coeffs.end()) continue;
      m(d, static_cast<Eigen::Index>(t)) = (above % 2 ? -1.0 : 1.0) * it->second;
    }
  }
  return m;
}

int contraction_rank(const ConstantFourVector& xi, double rel_tol) {
  const Eigen::MatrixXd m = contraction_matrix(xi);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > rel_tol * s[0];
  return r;
}

int rank_at(const ChartPoint& p) {
  const double f = bruhat_field(p).coeff;
  // Absolute floor: at the North pole f is round-off, and a lone coefficient has no relative scale.
  if (std::abs(f) <= 1e-10) return 0;
  ConstantFourVector xi;
  xi.coeffs[{0, 1, 2, 3}] = f;
  return contraction_rank(xi);
}

Eigen::Vector4d hamiltonian_field(double coeff, const Eigen::Vector4d& df1,
                                  const Eigen::Vector4d& df2, const Eigen::Vector4d& df3) {
  Eigen::Vector4d out;
  for (int d = 0; d < 4; ++d) {
    Eigen::Matrix4d m;
    m.row(0) = df1.transpose();
    m.row(1) = df2.transpose();
    m.row(2) = df3.transpose();
    m.row(3) = Eigen::Vector4d::Unit(d).transpose();
    out[d] = coeff * m.determinant();
  }
  return out;
}

Eigen::Vector4d hamiltonian_field(const ChartPoint& p, const Eigen::Vector4d& df1,
                                  const Eigen::Vector4d& df2, const Eigen::Vector4d& df3) {
  return hamiltonian_field(bruhat_field(p).coeff, df1, df2, df3);
}

namespace {

// Chart coordinate of (coset of y) * g, and the determinant of its derivative in y.
struct FlowStep {
  Quaternion image;
  double jac_det;
};

FlowStep flow_step(Chart chart, const Quaternion& y, const QMatrix& g) {
  // Second row of the representative, up to a left unit: South (1, y), North (y, 1).
  const auto e = entries_of(chart);
  Quaternion row[2];
  row[e.den_col] = 1.0;
  row[e.num_col] = y;
  const Quaternion a = row[0] * g(0, e.den_col) + row[1] * g(1, e.den_col);
  const Quaternion b = row[0] * g(0, e.num_col) + row[1] * g(1, e.num_col);
  const Quaternion a_inv = checked_inverse(a);
  const Quaternion image = a_inv * b;
  // y enters row[num_col]; a variation dy changes a by dy*g(num_col, den_col), b by dy*g(num_col, num_col).
  Eigen::Matrix4d d;
  for (int c = 0; c < 4; ++c) {
    const Quaternion dy = from_vec4(Eigen::Vector4d::Unit(c));
    const Quaternion da = dy * g(e.num_col, e.den_col);
    const Quaternion db = dy * g(e.num_col, e.num_col);
    d.col(c) = to_vec4(-a_inv * da * image + a_inv * db);
  }
  return {image, d.determinant()};
}

}  // namespace

LieDerivativeSides lie_derivative_sides(const ChartPoint& p, const AlgebraElement& x, double h) {
  const auto& alg = SpAlgebra::get(2);
  const QMatrix xm = alg.to_matrix(x);
  auto pulled_back = [&](double t) {
    const FlowStep s = flow_step(p.chart, p.coord, expm(xm * t));
    return bruhat_field({p.chart, s.image}).coeff / s.jac_det;
  };
  LieDerivativeSides out;
  out.lhs = (pulled_back(h) - pulled_back(-h)) / (2.0 * h);
  const QMatrix k = coset_rep(p);
  out.rhs = pushforward_coeff_at(k, p.chart, ad_group(k, ad_multivector(x, lambda_element(2))));
  return out;
}

double lie_derivative_check(const ChartPoint& p, const AlgebraElement& x) {
  return lie_derivative_sides(p, x).residual();
}

}  // namespace qflag::hp1
