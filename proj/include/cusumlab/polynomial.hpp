#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cusumlab/combinatorics.hpp"

namespace cusumlab {

/// Raised when an expansion would store more monomials than the cap allows.
class ExpansionCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multivariate polynomial with integer coefficients in up to 8 variables,
/// each of degree at most 255. Exponent vectors are packed one byte per variable.
class SparsePolynomial {
 public:
  using Key = std::uint64_t;
  static constexpr int kMaxVars = 8;
  static constexpr std::size_t kDefaultCap = 5'000'000;

  explicit SparsePolynomial(int nvars = 0, std::size_t cap = kDefaultCap);
  static SparsePolynomial constant(int nvars, const Integer& value);
  /// The variable x_index (1-based).
  static SparsePolynomial variable(int nvars, int index);

  int nvars() const { return nvars_; }
  std::size_t cap() const { return cap_; }
  void set_cap(std::size_t cap) { cap_ = cap; }
  std::size_t size() const { return terms_.size(); }
  const std::unordered_map<Key, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  static Key pack(std::span<const int> exponents);
  /// Exponent of variable var (0-based) in a packed key.
  static int exponent(Key key, int var) { return static_cast<int>((key >> (8 * var)) & 0xFFU); }
  std::vector<int> unpack(Key key) const;

  void add_term(Key key, const Integer& coefficient);
  Integer coefficient(std::span<const int> exponents) const;
  Integer constant_term() const;
  int total_degree() const;
  std::size_t negative_count() const;
  bool all_nonnegative() const;

  SparsePolynomial operator+(const SparsePolynomial& other) const;
  SparsePolynomial operator-(const SparsePolynomial& other) const;
  SparsePolynomial operator*(const SparsePolynomial& other) const;
  SparsePolynomial& operator+=(const SparsePolynomial& other);
  SparsePolynomial& operator-=(const SparsePolynomial& other);
  SparsePolynomial scaled(const Integer& factor) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Terms sorted by exponent vector (lexicographic, x_1 first).
  std::vector<std::pair<std::vector<int>, Integer>> sorted_terms() const;
  std::string to_string() const;

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b);

 private:
  void check_cap() const;

  int nvars_;
  std::size_t cap_;
  std::unordered_map<Key, Integer> terms_;
};

/// e_degree of the variables in `subset` (1-based indices).
SparsePolynomial elementary_symmetric_polynomial(int nvars, const IndexSet& subset, int degree);

/// Substitutes x_j = 1 + s_j + s_{j+1} + ... + s_n (s_j stored in slot j), mapping
/// the ordered region x_1 >= ... >= x_n >= 1 onto the nonnegative orthant.
SparsePolynomial difference_substitution(const SparsePolynomial& poly);

}  // namespace cusumlab
