#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cusumlab/combinatorics.hpp"
#include "cusumlab/muirhead.hpp"
#include "cusumlab/record.hpp"

namespace cusumlab {

/// (c, b, k, p, q) with the odds vector; q must lie in the admissible range.
struct AplusInstance {
  int c = 0;
  int b = 0;
  int k = 0;
  int p = 0;
  int q = 0;
  OddsVector<Rational> w = OddsVector<Rational>::ones(1);

  AplusInstance(int c, int b, int k, int p, int q, OddsVector<Rational> w);
  AplusInstance(const Scenario& scn, OddsVector<Rational> w);
  void validate() const;
};

/// Per-subset quantities used by the weighted-average form of the positivity test.
struct SubsetProfile {
  IndexSet J;
  int q_prime = 0;    // #{j in J : j <= b}
  Integer k_J;        // C(c-b-p+q', k)
  Rational u_J;       // e_{b-q}(C \ J)
  int f_J = 0;        // orderings of J lying below h
  Rational wbar;      // mean of w_{j_1}...w_{j_q} over those orderings, 0 if none
};

Integer k_J(int c, int b, int k, int p, const IndexSet& J);

/// Evaluates components and cusums at a+ through the tuplet re-expression.
/// Component values depend on [j] through w_{j_1..j_q} and the subset J only;
/// the J-part is computed once and cached.
class AplusEvaluator {
 public:
  explicit AplusEvaluator(AplusInstance inst);

  const AplusInstance& instance() const { return inst_; }
  /// p! C(b,q) C(c-b-k,p-q) / C(p,q)
  const Rational& prefactor() const { return prefactor_; }
  /// The bracketed tuplet expression for subset J (before dividing by the prefactor).
  Rational bracket(const IndexSet& J) const;

  Rational component(const CusumSubscript& j) const;
  Rational cusum(const CusumSubscript& h) const;
  /// Every cusum S_[h] for h in {1..c}^p at once.
  CusumTable<Rational> cusum_table() const;

 private:
  const Rational& base(std::uint64_t mask) const;
  Rational lead_product(const std::vector<int>& j) const;

  AplusInstance inst_;
  Rational prefactor_;
  mutable std::unordered_map<std::uint64_t, Rational> cache_;
};

Rational component_at_aplus(const AplusInstance& inst, const CusumSubscript& j);
Rational cusum_at_aplus(const AplusInstance& inst, const CusumSubscript& h);

/// Four-factor ratio of normalized tuplet sums for J (|J| = p) and K (|K| = k, K in C \ B).
Rational cross_product_ratio(const AplusInstance& inst, const IndexSet& J, const IndexSet& K);
/// Sum of cross_product_ratio over admissible K (k_J times the average; 0 when k_J = 0).
Rational summed_cross_product_ratio(const AplusInstance& inst, const IndexSet& J);
/// Throws std::domain_error when k_J = 0.
Rational avg_cross_product_ratio(const AplusInstance& inst, const IndexSet& J);

/// C(c-b,k) C(c-k,p) / C(c,p)
Rational rhs_constant(int c, int b, int k, int p);
/// C(c-k,b) C(c-p,k) / C(c,b)
Rational rhs_constant_alt(int c, int b, int k, int p);
/// The unsimplified threshold C(c-b-p+q,k) C(c-p,b-q) C(c-k,b) / (C(c-k-p,b-q) C(c,b)).
Rational rhs_constant_unsimplified(int c, int b, int k, int p, int q);

/// Orderings [j] of J with j_alpha <= h_alpha.
int orderings_count(const IndexSet& J, const CusumSubscript& h);
SubsetProfile subset_profile(const AplusInstance& inst, const IndexSet& J, const CusumSubscript& h);

/// Left side of the positivity criterion: the weighted average of k_J R_J.
Rational weighted_average_44(const AplusInstance& inst, const CusumSubscript& h);
/// Compares weighted_average_44 with rhs_constant and checks the verdict agrees
/// with the sign of cusum_at_aplus. Verdict pass iff the two signs agree.
VerificationRecord check_inequality_44(const AplusInstance& inst, const CusumSubscript& h);

/// Contributing h in {1..max_entry}^p, lexicographic.
std::vector<CusumSubscript> contributing_subscripts(int p, int max_entry);
/// Every (c, b, k, p, q) in the admissible ranges for 3 <= c <= c_max, with
/// representative superscripts, in lexicographic order.
std::vector<Scenario> scenario_keys(int c_max);
/// scenario_keys paired with each contributing h with entries in 1..c-1.
std::vector<std::pair<Scenario, CusumSubscript>> enumerate_scenarios(int c_max);

ScenarioFields scenario_fields(const Scenario& scn);
ScenarioFields scenario_fields(const Scenario& scn, const CusumSubscript& h);

}  // namespace cusumlab
