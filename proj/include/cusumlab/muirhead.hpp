#pragma once

#include <span>
#include <vector>

#include "cusumlab/combinatorics.hpp"
#include "cusumlab/scalar.hpp"

namespace cusumlab {

/// Ordered exponent vector a_1 >= ... >= a_b = r >= ... >= a_{c-k} > 0 with
/// k trailing zeros. Limit configurations (a*, a+) may carry zeros in the
/// middle block while still declaring k.
template <class T>
class Configuration {
 public:
  Configuration(std::vector<T> entries, int b, int k, bool limit = false);

  /// (r,...,r,0,...,0) with b leading r's.
  static Configuration star(int c, int b, int k, T r = T(1));
  /// The a+ limit: b r's, then c-b-k vanishing entries, then k zeros.
  static Configuration aplus(int c, int b, int k, T r = T(1));
  /// (r,...,r,x,...,x,0,...,0): the stage-one path point.
  static Configuration path(int c, int b, int k, T r, T x);

  int c() const { return static_cast<int>(entries_.size()); }
  int b() const { return b_; }
  int k() const { return k_; }
  const T& r() const { return entries_[b_ - 1]; }
  bool is_limit() const { return limit_; }
  const std::vector<T>& entries() const { return entries_; }
  const T& operator[](int m) const { return entries_[m - 1]; }

  Configuration star() const { return star(c(), b_, k_, r()); }

 private:
  std::vector<T> entries_;
  int b_;
  int k_;
  bool limit_;
};

/// w_1 >= ... >= w_c >= 1.
template <class T>
class OddsVector {
 public:
  explicit OddsVector(std::vector<T> entries);
  static OddsVector ones(int c) { return OddsVector(std::vector<T>(static_cast<std::size_t>(c), T(1))); }

  int c() const { return static_cast<int>(entries_.size()); }
  /// max{m : w_m > 1}, 0 when every entry equals 1.
  int lambda() const { return lambda_; }
  bool all_equal() const;
  const std::vector<T>& entries() const { return entries_; }
  std::span<const T> span() const { return entries_; }
  const T& operator[](int m) const { return entries_[m - 1]; }

 private:
  std::vector<T> entries_;
  int lambda_ = 0;
};

/// Superscript (i_1 < ... < i_p), all within {1..c-k}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> positions);
  int p() const { return static_cast<int>(positions_.size()); }
  const std::vector<int>& positions() const { return positions_; }
  int operator[](int alpha) const { return positions_[alpha - 1]; }
  /// #{alpha : i_alpha <= b}
  int q(int b) const;
  void validate(int c, int k) const;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> positions_;
};

/// Cusum (or component) subscript: p entries in {1..c}, any order, repeats allowed.
class CusumSubscript {
 public:
  CusumSubscript() = default;
  CusumSubscript(std::initializer_list<int> entries) : entries_(entries) {}
  explicit CusumSubscript(std::vector<int> entries) : entries_(std::move(entries)) {}
  static CusumSubscript constant(int p, int value) {
    return CusumSubscript(std::vector<int>(static_cast<std::size_t>(p), value));
  }

  int p() const { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const { return entries_; }
  int operator[](int alpha) const { return entries_[alpha - 1]; }
  bool has_repeat() const;
  void validate(int c) const;
  friend auto operator<=>(const CusumSubscript&, const CusumSubscript&) = default;

 private:
  std::vector<int> entries_;
};

/// True iff the ascending rearrangement h' satisfies h'_alpha >= alpha.
bool is_contributing(const CusumSubscript& h);

/// One verification instance: 1 <= b < c, 1 <= k <= c-b-1, 1 <= p <= c-k,
/// max(0, b+k+p-c) <= q <= min(b, p).
struct Scenario {
  int c = 0;
  int b = 0;
  int k = 0;
  int p = 0;
  int q = 0;
  MultiIndex superscript;

  /// Superscript (1..q, b+1..b+p-q).
  static Scenario representative(int c, int b, int k, int p, int q);
  static Scenario with_superscript(int c, int b, int k, MultiIndex superscript);
  /// p = c-k with superscript (1..c-k).
  static Scenario full(int c, int b, int k);
  void validate() const;
  friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

int q_lower(int c, int b, int k, int p);
int q_upper(int b, int p);

template <class T>
T weight_product(const Permutation& pi, const Configuration<T>& a, const OddsVector<T>& w);

template <class T>
T muirhead_ratio(std::span<const Permutation> perms, const Configuration<T>& a, const Configuration<T>& a_star,
                 const OddsVector<T>& w);

template <class T>
bool submajorizes(const Configuration<T>& a, const Configuration<T>& a_star);

/// All cusums of one superscript, addressed by h in {1..c}^p.
template <class T>
class CusumTable {
 public:
  CusumTable(int c, int p, std::vector<T> prefix) : c_(c), p_(p), prefix_(std::move(prefix)) {}
  int c() const { return c_; }
  int p() const { return p_; }
  const T& at(const CusumSubscript& h) const;

 private:
  int c_;
  int p_;
  std::vector<T> prefix_;
};

/// Sums of p-dimensional point masses over boxes [1,h_1] x ... x [1,h_p].
/// `mass` is indexed with j_1 varying fastest (offset sum (j_alpha-1) c^(alpha-1)).
template <class T>
CusumTable<T> summed_area(int c, int p, std::vector<T> mass);

/// Ground-truth evaluator: enumerates the full group and every sigma_K coset,
/// caches each permutation's numerator weight, and filters on demand.
/// Capped at c <= 8.
template <class T>
class DirectEvaluator {
 public:
  static constexpr int kMaxC = 8;

  DirectEvaluator(const Configuration<T>& a, const OddsVector<T>& w);

  int c() const { return c_; }
  T F() const;
  T component(const MultiIndex& i, const CusumSubscript& j) const;
  T cusum(const MultiIndex& i, const CusumSubscript& h) const;
  CusumTable<T> cusum_table(const MultiIndex& i) const;

 private:
  struct Block {
    std::vector<Permutation> perms;
    std::vector<T> numerators;
    T denominator;
  };
  template <class Pred>
  T restricted(Pred keep) const;

  int c_;
  int b_;
  int k_;
  std::vector<Block> cosets_;
  Block full_;
  T n_subsets_;  // C(c-b, k)
};

template <class T>
T eval_F(const Configuration<T>& a, const OddsVector<T>& w);

template <class T>
T eval_component(const Scenario& scn, const MultiIndex& i, const CusumSubscript& j, const Configuration<T>& a,
                 const OddsVector<T>& w);

template <class T>
T eval_cusum(const Scenario& scn, const MultiIndex& i, const CusumSubscript& h, const Configuration<T>& a,
             const OddsVector<T>& w);

/// Relative gap between a central difference of F_(j)(a) in a_{i_pos} and
/// F_(j)(a) log w_{j at i_pos}. i_pos must belong to the scenario superscript
/// and must not be b (a_b is pinned to r).
double derivative_identity_check(const Scenario& scn, int i_pos, const CusumSubscript& j,
                                 const Configuration<double>& a, const OddsVector<double>& w, double step);

}  // namespace cusumlab
