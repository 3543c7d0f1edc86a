#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cusumlab/aplus.hpp"
#include "cusumlab/lemmas.hpp"
#include "cusumlab/sampling.hpp"
#include "oracle.hpp"

using namespace cusumlab;

TEST_CASE("desk case single-index components at a+") {
  const auto w = oracle::odds({2, 1, 1});
  const AplusInstance inst(3, 1, 1, 1, 1, w);
  CHECK(component_at_aplus(inst, CusumSubscript{1}) == Rational(1, 3));
  CHECK(component_at_aplus(inst, CusumSubscript{2}) == Rational(-1, 6));
  CHECK(component_at_aplus(inst, CusumSubscript{3}) == Rational(-1, 6));
  CHECK(cusum_at_aplus(inst, CusumSubscript{2}) == Rational(1, 6));
  CHECK(cusum_at_aplus(inst, CusumSubscript{3}) == 0);
  CHECK(oracle::component(oracle::aplus(3, 1), w.entries(), 1, 1, {1}, {1}) == Rational(1, 3));
}

TEST_CASE("engine equals brute-force enumeration at the a+ limit") {
  std::mt19937_64 rng(77);
  for (const Scenario& scn : scenario_keys(4)) {
    const auto w = random_odds(scn.c, rng);
    const AplusEvaluator ev(AplusInstance(scn, w));
    const auto a = oracle::aplus(scn.c, scn.b);
    const auto& sup = scn.superscript.positions();
    for (const CusumSubscript& h : contributing_subscripts(scn.p, scn.c - 1)) {
      CHECK(ev.cusum(h) == oracle::cusum(a, w.entries(), scn.b, scn.k, sup, h.entries()));
    }
  }
}

TEST_CASE("engine components equal brute force at c = 5") {
  std::mt19937_64 rng(5);
  for (const Scenario& scn : scenario_keys(5)) {
    if (scn.c != 5 || scn.p > 2) continue;
    const auto w = random_odds(5, rng);
    const AplusEvaluator ev(AplusInstance(scn, w));
    const auto a = oracle::aplus(5, scn.b);
    const CusumSubscript j = scn.p == 1 ? CusumSubscript{4} : CusumSubscript{4, 1};
    CHECK(ev.component(j) == oracle::component(a, w.entries(), scn.b, scn.k, scn.superscript.positions(), j.entries()));
  }
}

TEST_CASE("full and non-contributing subscripts vanish") {
  const auto w = oracle::odds({3, 2, 2, 1, 1});
  for (const Scenario& scn : scenario_keys(5)) {
    if (scn.c != 5) continue;
    const AplusEvaluator ev(AplusInstance(scn, w));
    CHECK(ev.cusum(CusumSubscript::constant(scn.p, 5)) == 0);
    if (scn.p >= 2) CHECK(ev.cusum(CusumSubscript::constant(scn.p, 1)) == 0);
    if (scn.p >= 2) CHECK(ev.component(CusumSubscript::constant(scn.p, 2)) == 0);
  }
}

TEST_CASE("cusum table matches per-subscript cusums") {
  const AplusEvaluator ev(AplusInstance(5, 2, 1, 2, 1, oracle::odds({4, 3, 2, 2, 1})));
  const auto table = ev.cusum_table();
  for (int h1 = 1; h1 <= 5; ++h1)
    for (int h2 = 1; h2 <= 5; ++h2) CHECK(table.at(CusumSubscript{h1, h2}) == ev.cusum(CusumSubscript{h1, h2}));
}

TEST_CASE("cross-product ratio") {
  const AplusInstance inst(4, 2, 1, 2, 1, oracle::odds({2, 1, 1, 1}));
  CHECK(cross_product_ratio(inst, IndexSet{1, 3}, IndexSet{4}) == Rational(9, 10));
  const AplusInstance flat(5, 2, 1, 2, 1, OddsVector<Rational>::ones(5));
  CHECK(cross_product_ratio(flat, IndexSet{1, 3}, IndexSet{4}) == 1);
  CHECK(avg_cross_product_ratio(flat, IndexSet{1, 3}) == 1);
  CHECK_THROWS_AS(avg_cross_product_ratio(AplusInstance(5, 2, 2, 2, 1, oracle::odds({2, 1, 1, 1, 1})), IndexSet{3, 4}),
                  std::domain_error);
}

TEST_CASE("three forms of the right-hand constant agree") {
  CHECK(rhs_constant(4, 2, 1, 2) == 1);
  CHECK(rhs_constant(48, 25, 22, 2) == Rational(7475, 1128));
  for (const Scenario& scn : scenario_keys(8)) {
    const auto [c, b, k, p, q, sup] = scn;
    CHECK(rhs_constant(c, b, k, p) == rhs_constant_alt(c, b, k, p));
    CHECK(rhs_constant(c, b, k, p) == rhs_constant_unsimplified(c, b, k, p, q));
  }
}

TEST_CASE("weighted average criterion") {
  const auto w = oracle::odds({2, 1, 1});
  const AplusInstance desk(3, 1, 1, 1, 1, w);
  const VerificationRecord rec = check_inequality_44(desk, CusumSubscript{2});
  CHECK(rec.verdict == Verdict::pass);
  CHECK(weighted_average_44(desk, CusumSubscript{2}) > rhs_constant(3, 1, 1, 1));

  std::mt19937_64 rng(11);
  for (const Scenario& scn : scenario_keys(5)) {
    const auto wr = random_odds(scn.c, rng);
    const AplusInstance inst(scn, wr);
    CHECK(weighted_average_44(inst, CusumSubscript::constant(scn.p, scn.c)) == rhs_constant(scn.c, scn.b, scn.k, scn.p));
    const AplusInstance flat(scn, OddsVector<Rational>::ones(scn.c));
    for (const CusumSubscript& h : contributing_subscripts(scn.p, scn.c - 1)) {
      CHECK(weighted_average_44(flat, h) == lemma41_average(scn.c, scn.b, scn.k, scn.p, h));
      const Rational lhs = weighted_average_44(inst, h);
      const int expected = sgn(cusum_at_aplus(inst, h));
      CHECK(sgn(lhs - rhs_constant(scn.c, scn.b, scn.k, scn.p)) == expected);
    }
  }
}

TEST_CASE("subset profiles and orderings") {
  CHECK(orderings_count(IndexSet{1, 2}, CusumSubscript{1, 3}) == 1);
  CHECK(orderings_count(IndexSet{2, 3}, CusumSubscript{4, 4}) == 2);
  CHECK(orderings_count(IndexSet{1, 2, 3}, CusumSubscript{2, 1, 3}) == 1);
  CHECK(k_J(6, 2, 2, 2, IndexSet{1, 4}) == binomial(3, 2));
  const AplusInstance inst(4, 2, 1, 2, 1, oracle::odds({3, 2, 1, 1}));
  const SubsetProfile prof = subset_profile(inst, IndexSet{1, 3}, CusumSubscript{3, 3});
  CHECK(prof.q_prime == 1);
  CHECK(prof.f_J == 2);
  CHECK(prof.wbar == Rational(2));
}

TEST_CASE("scenario enumeration covers the admissible ranges") {
  std::set<std::pair<int, int>> c3;
  for (const Scenario& scn : scenario_keys(3)) {
    CHECK(scn.c == 3);
    c3.insert({scn.b, scn.k});
    scn.validate();
  }
  CHECK(c3 == std::set<std::pair<int, int>>{{1, 1}});
  std::set<int> ps;
  for (const Scenario& scn : scenario_keys(3)) ps.insert(scn.p);
  CHECK(ps == std::set<int>{1, 2});
  for (const auto& [scn, h] : enumerate_scenarios(5)) {
    CHECK(is_contributing(h));
    for (int v : h.entries()) CHECK(v <= scn.c - 1);
  }
  CHECK_THROWS(AplusInstance(4, 2, 1, 2, 3, oracle::odds({2, 1, 1, 1})));
}
