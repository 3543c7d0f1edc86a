#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cusumlab/muirhead.hpp"
#include "cusumlab/sampling.hpp"
#include "oracle.hpp"

using namespace cusumlab;

namespace {

std::vector<long> exponents(const Configuration<Rational>& a) {
  std::vector<long> out;
  for (const Rational& v : a.entries()) out.push_back(v.get_num().get_si());
  return out;
}

}  // namespace

TEST_CASE("desk case: F(1,1,0) = 1/6 at w = (2,1,1)") {
  const auto w = oracle::odds({2, 1, 1});
  const Configuration<Rational> a({Rational(1), Rational(1), Rational(0)}, 1, 1);
  CHECK(oracle::component({1, 1, 0}, w.entries(), 1, 1, {}, {}) == Rational(1, 6));
  CHECK(DirectEvaluator<Rational>(a, w).F() == Rational(1, 6));
  CHECK(eval_F(a, w) == Rational(1, 6));
}

TEST_CASE("F vanishes at a* for any odds") {
  const auto w = oracle::odds({5, 3, 2, 1, 1});
  for (int b = 1; b <= 3; ++b) {
    for (int k = 1; k <= 4 - b; ++k) {
      CHECK(DirectEvaluator<Rational>(Configuration<Rational>::star(5, b, k, Rational(2)), w).F() == 0);
    }
  }
}

TEST_CASE("direct evaluator matches brute-force enumeration on random configurations") {
  std::mt19937_64 rng(20240601);
  for (int c = 3; c <= 5; ++c) {
    for (int b = 1; b < c - 1; ++b) {
      for (int k = 1; k <= c - b - 1; ++k) {
        for (int draw = 0; draw < 2; ++draw) {
          const auto a = random_configuration(c, b, k, rng);
          const auto w = random_odds(c, rng);
          const auto e = exponents(a);
          const DirectEvaluator<Rational> ev(a, w);
          CHECK(ev.F() == oracle::component(e, w.entries(), b, k, {}, {}));
          for (int i = 1; i <= c - k; ++i) {
            for (int j = 1; j <= c; ++j) {
              CHECK(ev.component(MultiIndex({i}), CusumSubscript{j}) ==
                    oracle::component(e, w.entries(), b, k, {i}, {j}));
            }
          }
          if (c - k >= 2) {
            CHECK(ev.component(MultiIndex({1, 2}), CusumSubscript{2, 1}) ==
                  oracle::component(e, w.entries(), b, k, {1, 2}, {2, 1}));
            CHECK(ev.cusum(MultiIndex({1, c - k}), CusumSubscript{c - 1, 2}) ==
                  oracle::cusum(e, w.entries(), b, k, {1, c - k}, {c - 1, 2}));
          }
        }
      }
    }
  }
}

TEST_CASE("repeated subscript entries give a zero component") {
  const auto w = oracle::odds({3, 2, 1, 1});
  const Configuration<Rational> a({Rational(2), Rational(1), Rational(1), Rational(0)}, 2, 1);
  CHECK(DirectEvaluator<Rational>(a, w).component(MultiIndex({1, 3}), CusumSubscript{2, 2}) == 0);
}

TEST_CASE("summing a component over one subscript drops that superscript entry") {
  const auto w = oracle::odds({4, 3, 2, 1, 1});
  const Configuration<Rational> a({Rational(3), Rational(2), Rational(1), Rational(1), Rational(0)}, 2, 1);
  const DirectEvaluator<Rational> ev(a, w);
  for (int j1 = 1; j1 <= 5; ++j1) {
    Rational sum = 0;
    for (int j2 = 1; j2 <= 5; ++j2) sum += ev.component(MultiIndex({1, 3}), CusumSubscript{j1, j2});
    CHECK(sum == ev.component(MultiIndex({1}), CusumSubscript{j1}));
  }
  CHECK(ev.cusum(MultiIndex({2}), CusumSubscript{5}) == ev.F());
}

TEST_CASE("cusum table agrees with single cusums") {
  const auto w = oracle::odds({3, 2, 2, 1});
  const Configuration<Rational> a({Rational(2), Rational(1), Rational(1), Rational(0)}, 2, 1);
  const DirectEvaluator<Rational> ev(a, w);
  const MultiIndex sup({1, 3});
  const auto table = ev.cusum_table(sup);
  for (int h1 = 1; h1 <= 4; ++h1)
    for (int h2 = 1; h2 <= 4; ++h2) CHECK(table.at(CusumSubscript{h1, h2}) == ev.cusum(sup, CusumSubscript{h1, h2}));
}

TEST_CASE("summed area table against direct box sums") {
  const int c = 4, p = 2;
  std::vector<Rational> mass;
  for (int t = 0; t < c * c; ++t) mass.emplace_back(t * t - 3 * t + 1, 1 + t % 3);
  const auto table = summed_area(c, p, mass);
  for (int h1 = 1; h1 <= c; ++h1) {
    for (int h2 = 1; h2 <= c; ++h2) {
      Rational box = 0;
      for (int j1 = 1; j1 <= h1; ++j1)
        for (int j2 = 1; j2 <= h2; ++j2) box += mass[(j1 - 1) + (j2 - 1) * c];
      CHECK(table.at(CusumSubscript{h1, h2}) == box);
    }
  }
}

TEST_CASE("exact and floating evaluation agree") {
  const auto w = oracle::odds({3, 2, 1, 1, 1});
  const Configuration<Rational> a({Rational(3), Rational(2), Rational(1), Rational(0), Rational(0)}, 2, 2);
  const Configuration<double> ad({3.0, 2.0, 1.0, 0.0, 0.0}, 2, 2);
  const OddsVector<double> wd({3.0, 2.0, 1.0, 1.0, 1.0});
  CHECK(eval_F(ad, wd) == doctest::Approx(eval_F(a, w).get_d()).epsilon(1e-12));
}

TEST_CASE("derivative identity: d/da_i F_(j) = F_(j) log w_j") {
  const Configuration<double> a({3.0, 2.0, 1.5, 1.0, 0.0}, 2, 1);
  const OddsVector<double> w({4.0, 2.5, 2.0, 1.5, 1.0});
  const Scenario scn = Scenario::representative(5, 2, 1, 2, 1);
  CHECK(derivative_identity_check(scn, 1, CusumSubscript{1, 3}, a, w, 1e-4) < 1e-6);
  CHECK(derivative_identity_check(scn, 3, CusumSubscript{2, 4}, a, w, 1e-4) < 1e-6);
  CHECK_THROWS_AS(derivative_identity_check(scn, 2, CusumSubscript{1, 3}, a, w, 1e-4), std::invalid_argument);
}

TEST_CASE("configuration and odds validation") {
  CHECK_THROWS_AS(Configuration<Rational>({Rational(1), Rational(2), Rational(0)}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Configuration<Rational>({Rational(1), Rational(1), Rational(1)}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Configuration<Rational>({Rational(1), Rational(0), Rational(0)}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(OddsVector<Rational>({Rational(1), Rational(2)}), std::invalid_argument);
  CHECK_THROWS_AS(OddsVector<Rational>({Rational(2), Rational(1, 2)}), std::invalid_argument);
  CHECK(oracle::odds({3, 2, 1, 1}).lambda() == 2);
  CHECK(oracle::odds({1, 1, 1}).lambda() == 0);
  CHECK(oracle::odds({1, 1, 1}).all_equal());
}

TEST_CASE("weak submajorization") {
  const auto star = Configuration<Rational>::star(4, 2, 1, Rational(2));
  const Configuration<Rational> a({Rational(3), Rational(2), Rational(1), Rational(0)}, 2, 1);
  CHECK(submajorizes(a, star));
  CHECK(submajorizes(star, star));
}

TEST_CASE("contributing subscripts and scenario ranges") {
  CHECK(is_contributing(CusumSubscript{2, 1, 3}));
  CHECK_FALSE(is_contributing(CusumSubscript{1, 1}));
  CHECK(is_contributing(CusumSubscript{3, 1}));
  CHECK(q_lower(6, 3, 2, 3) == 2);
  CHECK(q_upper(3, 2) == 2);
  CHECK_THROWS(Scenario::representative(5, 2, 1, 2, 3).validate());
  CHECK_THROWS(Scenario::representative(5, 2, 3, 1, 1).validate());
  const Scenario full = Scenario::full(4, 2, 1);
  CHECK(full.p == 3);
  CHECK(full.q == 2);
  CHECK(full.superscript == MultiIndex({1, 2, 3}));
}
