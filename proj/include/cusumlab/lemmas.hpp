#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cusumlab/aplus.hpp"
#include "cusumlab/combinatorics.hpp"
#include "cusumlab/muirhead.hpp"
#include "cusumlab/record.hpp"

namespace cusumlab {

/// Exact average of C(c-b-p+q'[j], k) over the distinct-entry subscripts [j] <= [h].
/// Throws std::invalid_argument for a non-contributing h.
Rational lemma41_average(int c, int b, int k, int p, const CusumSubscript& h);

/// Law of q_p[J] = #{alpha : J_alpha <= b} under sequential uniform draws
/// J_alpha ~ U({1..h_alpha} \ {J_1..J_{alpha-1}}).
struct QpDistribution {
  std::vector<int> h;  // ascending
  int b = 0;
  int c = 0;
  int p = 0;
  std::map<int, Rational> pmf;

  Rational prob(int q) const;
  /// P(q_p > q)
  Rational survival(int q) const;
  Rational mean() const;
};

/// Exact pmf by dynamic programming over the count of draws <= b. The draw
/// order is taken along h sorted ascending; q_p's law over [j] <= [h] does not
/// depend on the order of h's entries.
QpDistribution qp_distribution(const CusumSubscript& h, int b, int c, int p);

/// C(b,q) C(c-b,p-q) / C(c,p)
Rational hypergeometric_pmf(int b, int p, int c, int q);

/// P_[h][q_p > q] >= P_[c..c][q_p > q] for all q, strict somewhere. All-equal
/// survival functions are reported (verdict report), never passed silently.
VerificationRecord check_stochastic_dominance(const CusumSubscript& h, int b, int c, int p);

struct SignPattern {
  std::vector<Rational> values;  // F_[j](a+) for j = 1..c
  std::vector<int> signs;
  /// + for j <= b, - for j > b, strictly.
  bool monotone(int b) const;
};

/// Single-index components at a+ with q = 1 (superscript inside B) or q = 0.
SignPattern single_index_signs(int c, int b, int k, int q, const OddsVector<Rational>& w);

/// R_{j.} >= 1 - k/c when j <= b (q = 0); R_{j.} <= (1 - k/c)/(1 - k/(c-b)) when j > b (q = 1).
/// Bounds are non-strict.
VerificationRecord check_lemma43_bounds(int c, int b, int k, int j, const OddsVector<Rational>& w);

struct Decomposition46 {
  Rational overall;
  Rational avg_plus;
  std::optional<Rational> avg_minus;  // absent when h = c
  Rational weight_plus;
  Rational weight_minus;
  Rational rhs;
  /// weight_plus * avg_plus + weight_minus * avg_minus == rhs
  bool identity_holds() const;
};

/// Splits the unconstrained (p = 1) weighted average of k_J R_J into the terms
/// with j <= h and j > h.
Decomposition46 avg_decomposition_46(int c, int b, int k, int q, int h, const OddsVector<Rational>& w);

}  // namespace cusumlab
