#include "qflag/flags.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qflag/decomp.hpp"
#include "qflag/errors.hpp"
#include "qflag/hp1geom.hpp"
#include "qflag/sp_algebra.hpp"

namespace qflag {

namespace {

void validate_word(const std::vector<int>& word, int n) {
  if (n < 2) throw PreconditionError("leaf points need n >= 2");
  for (int r : word) {
    if (r < 1 || r >= n) throw PreconditionError("word letter outside 1..n-1");
  }
  if (!is_reduced_word(word, n)) throw PreconditionError("word is not reduced");
}

QMatrix leaf_product(const std::vector<int>& word, const std::vector<Quaternion>& params, int n) {
  QMatrix m = QMatrix::identity(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < word.size(); ++i) {
    m = m * embed_sp2(hp1::coset_rep({hp1::Chart::South, params[i]}), word[i], n);
  }
  return m;
}

}  // namespace

LeafPoint leaf_point(const std::vector<int>& word, const std::vector<Quaternion>& params, int n) {
  validate_word(word, n);
  if (params.size() != word.size()) throw PreconditionError("need one parameter per word letter");
  LeafPoint p{n, word, params, leaf_product(word, params, n)};
  if (!is_symplectic(p.matrix, 1e-10)) throw PreconditionError("leaf product left Sp(n)");
  return p;
}

Permutation cell_of(const QMatrix& k) {
  if (!is_symplectic(k, 1e-8)) throw PreconditionError("cell_of expects a symplectic matrix");
  return bruhat(k).w;
}

std::vector<Quaternion> generic_leaf_params(std::size_t count, Rng& rng) {
  std::vector<Quaternion> v;
  for (std::size_t i = 0; i < count; ++i) v.push_back(random_quaternion_in_shell(rng, 0.3, 1.5));
  return v;
}

GenericLeafPoint random_leaf_point(const std::vector<int>& word, int n, Rng& rng, int max_retries) {
  validate_word(word, n);
  const Permutation target = Permutation::from_word(word, n);
  GenericLeafPoint out;
  for (;;) {
    out.point = leaf_point(word, generic_leaf_params(word.size(), rng), n);
    out.cell_matches = cell_of(out.point.matrix) == target;
    if (out.cell_matches || out.retries >= max_retries) return out;
    ++out.retries;
  }
}

int leaf_dimension(const std::vector<int>& word, int n, int probes, std::uint64_t seed) {
  validate_word(word, n);
  if (word.empty()) return 0;
  const auto& alg = SpAlgebra::get(n);
  Rng rng(seed);
  int best = 0;
  for (int probe = 0; probe < std::max(1, probes); ++probe) {
    const auto base = generic_leaf_params(word.size(), rng);
    const QMatrix k_inv = conj_transpose(leaf_product(word, base, n));
    const auto m = static_cast<Eigen::Index>(4 * word.size());
    Eigen::MatrixXd d(m, alg.dim());
    for (Eigen::Index c = 0; c < m; ++c) {
      auto plus = base;
      auto minus = base;
      const auto slot = static_cast<std::size_t>(c / 4);
      const Eigen::Vector4d step = Eigen::Vector4d::Unit(c % 4) * kLeafFdStep;
      plus[slot] = plus[slot] + hp1::from_vec4(step);
      minus[slot] = minus[slot] - hp1::from_vec4(step);
      const QMatrix dk =
          (leaf_product(word, plus, n) - leaf_product(word, minus, n)) * (0.5 / kLeafFdStep);
      d.row(c) = alg.project(dk * k_inv).transpose();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > kLeafRankRelTol * s[0];
    best = std::max(best, r);
  }
  return best;
}

OrbitReport orbit_probe(const QMatrix& k, int samples, std::uint64_t seed) {
  if (!k.is_square() || !is_symplectic(k, 1e-8)) {
    throw PreconditionError("orbit_probe expects a symplectic matrix");
  }
  const int n = static_cast<int>(k.rows());
  const LeafSignature start = leaf_signature(k);
  OrbitReport rep;
  rep.n = n;
  rep.w = start.w;
  rep.samples = samples;
  rep.seed = seed;

  const bool track_kv =
      n == 2 && frobenius_distance(k, permutation_matrix(Permutation({2, 1}))) <= 1e-12;
  if (track_kv) rep.reconstruction_error = 0.0;

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const QMatrix moved = dress(random_ru(n, rng), k);
    const LeafSignature sig = leaf_signature(moved);
    if (!(sig.w == start.w)) {
      rep.w_constant = false;
      rep.phase_dev = std::numeric_limits<double>::infinity();
    } else {
      rep.phase_dev = std::max(rep.phase_dev, signature_distance(start, sig));
    }
    if (track_kv) {
      const Quaternion v = hp1::chart_coordinate(moved, hp1::Chart::South);
      const double err = frobenius_distance(moved, hp1::coset_rep({hp1::Chart::South, v}));
      rep.reconstruction_error = std::max(*rep.reconstruction_error, err);
    }
  }
  return rep;
}

}  // namespace qflag
