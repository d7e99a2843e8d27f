#include "qflag/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "qflag/errors.hpp"

namespace qflag {

Permutation::Permutation(std::vector<int> one_line) : one_line_(std::move(one_line)) {
  const int n = size();
  std::vector<bool> seen(one_line_.size(), false);
  for (int image : one_line_) {
    if (image < 1 || image > n || seen[static_cast<std::size_t>(image - 1)]) {
      throw PreconditionError("one-line notation is not a bijection of {1.." +
                              std::to_string(n) + "}");
    }
    seen[static_cast<std::size_t>(image - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::longest(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.rbegin(), v.rend(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::adjacent(int r, int n) {
  if (r < 1 || r >= n) {
    throw PreconditionError("adjacent transposition index " + std::to_string(r) +
                            " out of range for S_" + std::to_string(n));
  }
  auto v = identity(n).one_line_;
  std::swap(v[static_cast<std::size_t>(r - 1)], v[static_cast<std::size_t>(r)]);
  return Permutation(std::move(v));
}

Permutation Permutation::from_word(const std::vector<int>& word, int n) {
  auto w = identity(n);
  for (int r : word) {
    w = w * adjacent(r, n);
  }
  return w;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(one_line_.size());
  for (std::size_t j = 0; j < one_line_.size(); ++j) {
    inv[static_cast<std::size_t>(one_line_[j] - 1)] = static_cast<int>(j) + 1;
  }
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < one_line_.size(); ++j) {
    if (one_line_[j] != static_cast<int>(j) + 1) return false;
  }
  return true;
}

Permutation operator*(const Permutation& v, const Permutation& w) {
  if (v.size() != w.size()) {
    throw PreconditionError("cannot compose permutations of different degree");
  }
  std::vector<int> out(w.one_line_.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = v(w.one_line_[j]);
  }
  return Permutation(std::move(out));
}

int length(const Permutation& w) {
  int inversions = 0;
  const auto& a = w.one_line();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] > a[j]) ++inversions;
    }
  }
  return inversions;
}

std::vector<int> reduced_word(const Permutation& w) {
  // w = (w * tau_r) * tau_r whenever w(r) > w(r+1), and w * tau_r is one shorter,
  // so descents are peeled off from the right end of the word.
  std::vector<int> word;
  auto current = w;
  const int n = w.size();
  while (!current.is_identity()) {
    for (int r = 1; r < n; ++r) {
      if (current(r) > current(r + 1)) {
        current = current * Permutation::adjacent(r, n);
        word.push_back(r);
        break;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

bool is_reduced_word(const std::vector<int>& word, int n) {
  for (int r : word) {
    if (r < 1 || r >= n) return false;
  }
  return length(Permutation::from_word(word, n)) == static_cast<int>(word.size());
}

int sign(const Permutation& w) { return length(w) % 2 == 0 ? 1 : -1; }

std::vector<Permutation> all_permutations(int n) {
  auto v = Permutation::identity(n).one_line();
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& w) {
  os << '[';
  for (int j = 1; j <= w.size(); ++j) {
    os << (j > 1 ? " " : "") << w(j);
  }
  return os << ']';
}

}  // namespace qflag
