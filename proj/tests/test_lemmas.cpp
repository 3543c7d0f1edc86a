#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "cusumlab/aplus.hpp"
#include "cusumlab/lemmas.hpp"
#include "cusumlab/sampling.hpp"
#include "oracle.hpp"

using namespace cusumlab;

namespace {

/// Sequential model on h in the given order: J_alpha uniform on {1..h_alpha} minus earlier draws.
std::map<int, Rational> sequential_model(const std::vector<int>& h, int b) {
  std::map<int, Rational> pmf;
  std::vector<int> drawn;
  auto rec = [&](auto&& self, std::size_t alpha, const Rational& prob) -> void {
    if (alpha == h.size()) {
      int q = 0;
      for (int v : drawn) q += v <= b ? 1 : 0;
      pmf[q] += prob;
      return;
    }
    std::vector<int> avail;
    for (int v = 1; v <= h[alpha]; ++v)
      if (std::find(drawn.begin(), drawn.end(), v) == drawn.end()) avail.push_back(v);
    for (int v : avail) {
      drawn.push_back(v);
      self(self, alpha + 1, prob / Rational(static_cast<long>(avail.size())));
      drawn.pop_back();
    }
  };
  rec(rec, 0, Rational(1));
  return pmf;
}

/// Uniform law over distinct-entry tuples j <= h, together with the mean of C(c-b-p+q', k).
std::pair<std::map<int, Rational>, Rational> uniform_tuples(const std::vector<int>& h, int b, int c, int k) {
  std::map<int, long> counts;
  long total = 0;
  Integer kj_sum = 0;
  const int p = static_cast<int>(h.size());
  std::vector<int> drawn;
  auto rec = [&](auto&& self, std::size_t alpha) -> void {
    if (alpha == h.size()) {
      int q = 0;
      for (int v : drawn) q += v <= b ? 1 : 0;
      ++counts[q];
      ++total;
      kj_sum += oracle::binom(c - b - p + q, k);
      return;
    }
    for (int v = 1; v <= h[alpha]; ++v) {
      if (std::find(drawn.begin(), drawn.end(), v) != drawn.end()) continue;
      drawn.push_back(v);
      self(self, alpha + 1);
      drawn.pop_back();
    }
  };
  rec(rec, 0);
  std::map<int, Rational> pmf;
  for (const auto& [q, n] : counts) pmf[q] = Rational(n) / Rational(total);
  return {pmf, Rational(kj_sum) / Rational(total)};
}

std::map<int, Rational> nonzero(const std::map<int, Rational>& pmf) {
  std::map<int, Rational> out;
  for (const auto& [q, v] : pmf)
    if (sgn(v) != 0) out[q] = v;
  return out;
}

}  // namespace

TEST_CASE("lemma41 average spot values") {
  CHECK(lemma41_average(4, 2, 1, 2, CusumSubscript{1, 3}) == Rational(3, 2));
  CHECK(lemma41_average(4, 2, 1, 2, CusumSubscript{4, 4}) == 1);
  CHECK(rhs_constant(4, 2, 1, 2) == 1);
  CHECK_THROWS_AS(lemma41_average(4, 2, 1, 2, CusumSubscript{1, 1}), std::invalid_argument);
}

TEST_CASE("q_p law and lemma41 average against brute-force enumeration") {
  for (const Scenario& scn : scenario_keys(6)) {
    if (scn.q != q_lower(scn.c, scn.b, scn.k, scn.p)) continue;
    for (const CusumSubscript& h : contributing_subscripts(scn.p, scn.c)) {
      const auto [uniform, mean_kj] = uniform_tuples(h.entries(), scn.b, scn.c, scn.k);
      const QpDistribution dist = qp_distribution(h, scn.b, scn.c, scn.p);
      CHECK(nonzero(dist.pmf) == uniform);
      CHECK(lemma41_average(scn.c, scn.b, scn.k, scn.p, h) == mean_kj);
      std::vector<int> sorted = h.entries();
      std::sort(sorted.begin(), sorted.end());
      CHECK(sequential_model(sorted, scn.b) == uniform);
    }
  }
}

TEST_CASE("q_p distribution examples") {
  const QpDistribution dist = qp_distribution(CusumSubscript{1, 3}, 2, 4, 2);
  CHECK(dist.prob(2) == Rational(1, 2));
  CHECK(dist.prob(1) == Rational(1, 2));
  CHECK(dist.prob(0) == 0);
  CHECK(dist.survival(1) == Rational(1, 2));
  CHECK(dist.mean() == Rational(3, 2));
  CHECK(hypergeometric_pmf(2, 2, 4, 2) == Rational(1, 6));
  for (int c = 3; c <= 8; ++c)
    for (int b = 1; b < c; ++b)
      for (int p = 1; p <= c; ++p) {
        const QpDistribution full = qp_distribution(CusumSubscript::constant(p, c), b, c, p);
        for (int q = 0; q <= p; ++q) CHECK(full.prob(q) == hypergeometric_pmf(b, p, c, q));
      }
}

TEST_CASE("stochastic dominance verdicts") {
  CHECK(check_stochastic_dominance(CusumSubscript{1, 3}, 2, 4, 2).verdict == Verdict::pass);
  CHECK(check_stochastic_dominance(CusumSubscript{4, 4}, 2, 4, 2).verdict == Verdict::report);
  CHECK(check_stochastic_dominance(CusumSubscript{3}, 2, 4, 1).verdict == Verdict::pass);
}

TEST_CASE("single-index sign pattern") {
  const SignPattern desk = single_index_signs(3, 1, 1, 1, oracle::odds({2, 1, 1}));
  CHECK(desk.values == std::vector<Rational>{Rational(1, 3), Rational(-1, 6), Rational(-1, 6)});
  CHECK(desk.signs == std::vector<int>{1, -1, -1});
  CHECK(desk.monotone(1));
  std::mt19937_64 rng(3);
  for (int draw = 0; draw < 20; ++draw) {
    const auto w = random_odds(5, rng);
    if (w.all_equal()) continue;
    for (int q = 0; q <= 1; ++q) CHECK(single_index_signs(5, 2, 1, q, w).monotone(2));
  }
}

TEST_CASE("cross-product ratio bounds") {
  const auto desk = check_lemma43_bounds(3, 1, 1, 1, oracle::odds({2, 1, 1}));
  CHECK(desk.verdict == Verdict::pass);
  CHECK(desk.detail.at("lower_bound") == "2/3");
  for (int j = 1; j <= 5; ++j) CHECK(check_lemma43_bounds(5, 2, 2, j, OddsVector<Rational>::ones(5)).verdict == Verdict::pass);
  const AplusInstance flat(5, 2, 2, 1, 0, OddsVector<Rational>::ones(5));
  CHECK(avg_cross_product_ratio(flat, IndexSet{1}) == 1);
}

TEST_CASE("split-average identity") {
  std::mt19937_64 rng(9);
  for (int c = 3; c <= 6; ++c)
    for (int b = 1; b < c - 1; ++b)
      for (int k = 1; k <= c - b - 1; ++k)
        for (int q = q_lower(c, b, k, 1); q <= 1; ++q)
          for (int h = 1; h <= c; ++h) {
            const Decomposition46 dec = avg_decomposition_46(c, b, k, q, h, random_odds(c, rng));
            CHECK(dec.identity_holds());
            CHECK(dec.overall == dec.rhs);
          }
  const Decomposition46 full = avg_decomposition_46(5, 2, 1, 1, 5, oracle::odds({3, 2, 1, 1, 1}));
  CHECK(full.weight_minus == 0);
  CHECK_FALSE(full.avg_minus.has_value());
  CHECK(full.avg_plus == rhs_constant(5, 2, 1, 1));
  const Decomposition46 low = avg_decomposition_46(6, 2, 2, 1, 2, OddsVector<Rational>::ones(6));
  CHECK(low.avg_plus == Rational(binomial(4, 2)));
  CHECK(low.avg_plus > low.rhs);
}
