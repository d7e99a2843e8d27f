#ifndef QFLAG_PERMUTATION_HPP
#define QFLAG_PERMUTATION_HPP

#include <iosfwd>
#include <vector>

namespace qflag {

/// An element of the symmetric group S_n in 1-indexed one-line notation: position j maps to w(j).
///
/// Composition is (v * w)(j) = v(w(j)), which makes permutation_matrix() a homomorphism
/// for the convention (P_w)_{i,j} = delta_{i, w(j)}.
class Permutation {
 public:
  Permutation() = default;
  /// Throws PreconditionError unless one_line is a bijection of {1..n}.
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  /// The longest element w_l = [n, n-1, ..., 1].
  static Permutation longest(int n);
  /// The adjacent transposition (r, r+1), 1 <= r < n.
  static Permutation adjacent(int r, int n);
  /// The product tau_{word[0]} * tau_{word[1]} * ... in S_n.
  static Permutation from_word(const std::vector<int>& word, int n);

  int size() const { return static_cast<int>(one_line_.size()); }
  /// w(j) for 1 <= j <= n.
  int operator()(int j) const { return one_line_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<int>& one_line() const { return one_line_; }

  Permutation inverse() const;
  bool is_identity() const;

  friend Permutation operator*(const Permutation& v, const Permutation& w);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> one_line_;
};

/// Number of inversions, equal to the length of any reduced word.
int length(const Permutation& w);

/// A reduced word r_1..r_m (each r meaning tau = (r, r+1)) with tau_{r_1} * ... * tau_{r_m} = w,
/// found by repeatedly stripping right descents.
std::vector<int> reduced_word(const Permutation& w);

/// True when the word composes to a permutation of the same length as the word.
bool is_reduced_word(const std::vector<int>& word, int n);

/// +1 for even permutations, -1 for odd ones.
int sign(const Permutation& w);

/// All n! permutations in lexicographic order of their one-line notation.
std::vector<Permutation> all_permutations(int n);

std::ostream& operator<<(std::ostream& os, const Permutation& w);

}  // namespace qflag

#endif  // QFLAG_PERMUTATION_HPP
