#ifndef QFLAG_FLAGS_HPP
#define QFLAG_FLAGS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qflag/permutation.hpp"
#include "qflag/qmatrix.hpp"
#include "qflag/quaternion.hpp"
#include "qflag/sampling.hpp"

namespace qflag {

/// A point of the leaf L_w given as a product of embedded k_v factors, one per letter of a
/// reduced word for w.
struct LeafPoint {
  int n = 0;
  std::vector<int> word;
  std::vector<Quaternion> params;
  QMatrix matrix;
};

/// matrix = prod_i embed_sp2(k_{v_i}, r_i, n) in word order.
/// Throws PreconditionError on a non-reduced word, letters outside 1..n-1, or |params| != |word|.
LeafPoint leaf_point(const std::vector<int>& word, const std::vector<Quaternion>& params, int n);

/// Permutation type of the Bruhat cell containing K.
Permutation cell_of(const QMatrix& k);

/// Generic parameters: |v| uniform in [0.3, 1.5] with uniform direction.
std::vector<Quaternion> generic_leaf_params(std::size_t count, Rng& rng);

struct GenericLeafPoint {
  LeafPoint point;
  int retries = 0;
  bool cell_matches = false;
};

/// leaf_point with generic parameters, redrawn (at most max_retries times) while the product
/// falls outside the cell of the word.
GenericLeafPoint random_leaf_point(const std::vector<int>& word, int n, Rng& rng, int max_retries = 3);

inline constexpr double kLeafFdStep = 1e-6;
inline constexpr double kLeafRankRelTol = 1e-7;

/// Numerical rank of the differential of (v_1..v_m) -> leaf_point matrix, right-trivialized into
/// sp(n) and measured with central differences; the maximum over `probes` random base points.
int leaf_dimension(const std::vector<int>& word, int n, int probes, std::uint64_t seed = 1);

struct OrbitReport {
  int n = 0;
  Permutation w;
  int samples = 0;
  std::uint64_t seed = 0;
  double phase_dev = 0.0;     ///< max signature distance from the starting point
  bool w_constant = true;
  /// For n = 2 and K = P_(12): max distance between an orbit point and k_v at its chart coordinate.
  std::optional<double> reconstruction_error;
};

/// Dresses K by `samples` random elements of RU (random_ru) and compares leaf signatures.
OrbitReport orbit_probe(const QMatrix& k, int samples, std::uint64_t seed);

}  // namespace qflag

#endif  // QFLAG_FLAGS_HPP
