#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cusumlab {

/// Arbitrary-precision rational. GMP keeps it canonical (den > 0, reduced)
/// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den" with a positive, reduced denominator. Integers keep the "/1".
std::string to_string(const Rational& x);
/// Parses "num/den" or a bare integer; throws std::invalid_argument.
Rational parse_rational(const std::string& text);

int sign(const Rational& x);
/// num/den in canonical form.
Rational ratio(const Integer& num, const Integer& den);

/// A bijection on {1..c}. Positions and values are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int c);
  static Permutation transposition(int c, int x, int y);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int m) const { return images_[m - 1]; }
  const std::vector<int>& images() const { return images_; }

  /// (*this ∘ inner)(m) = (*this)(inner(m)).
  Permutation after(const Permutation& inner) const;
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Sorted, duplicate-free subset of {1..c}.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> elements);
  explicit IndexSet(std::vector<int> elements);

  /// {first..last}; empty when last < first.
  static IndexSet range(int first, int last);

  int size() const { return static_cast<int>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  bool contains(int x) const;
  const std::vector<int>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  IndexSet set_minus(const IndexSet& other) const;
  IndexSet set_union(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  bool disjoint(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> elements_;
};

/// Calls fn for every size-r subset of `pool`, in lexicographic order.
void for_each_subset(const IndexSet& pool, int r, const std::function<void(const IndexSet&)>& fn);
std::vector<IndexSet> subsets_of_size(const IndexSet& pool, int r);

Integer factorial(int n);
/// Binomial coefficient; zero when r < 0 or r > n.
Integer binomial(int n, int r);

/// h'_1 (h'_2 - 1) ... (h'_p - p + 1) / p! with h' = h sorted ascending.
/// Zero exactly when some factor is non-positive (h is non-contributing).
Rational extended_binomial(std::span<const int> h, int p);

/// Sum of all products of `degree` distinct entries (e_degree).
template <class T>
T elementary_symmetric(std::span<const T> values, int degree) {
  if (degree < 0) return T(0);
  if (degree == 0) return T(1);
  if (degree > static_cast<int>(values.size())) return T(0);
  std::vector<T> e(static_cast<std::size_t>(degree) + 1, T(0));
  e[0] = T(1);
  int seen = 0;
  for (const T& v : values) {
    ++seen;
    for (int d = std::min(seen, degree); d >= 1; --d) e[d] += v * e[d - 1];
  }
  return e[degree];
}

/// e_degree over the entries of `w` selected by the 1-based indices in `subset`.
template <class T>
T elementary_symmetric_over(std::span<const T> w, const IndexSet& subset, int degree) {
  std::vector<T> picked;
  picked.reserve(subset.size());
  for (int m : subset) picked.push_back(w[m - 1]);
  return elementary_symmetric<T>(picked, degree);
}

/// Transposes the q-th element of K \ Z with the q-th element of Z \ K,
/// Z = {c-k+1..c}. Identity when K = Z.
Permutation sigma_K(const IndexSet& K, int c, int k);

/// Permutations fixing every element of `fixed`.
std::vector<Permutation> pointwise_stabilizer(const IndexSet& fixed, int c);

/// The coset built from sigma_K followed by every permutation fixing K.
/// Each member sends Z onto K (as sigma_K does) and {1..c-k} onto C \ K.
std::vector<Permutation> coset(const IndexSet& K, int c, int k);

/// All c! permutations in lexicographic order of their image vectors.
std::vector<Permutation> symmetric_group(int c);

}  // namespace cusumlab
