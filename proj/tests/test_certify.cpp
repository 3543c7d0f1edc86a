#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cusumlab/certify.hpp"
#include "cusumlab/polynomial.hpp"
#include "cusumlab/sampling.hpp"
#include "oracle.hpp"

using namespace cusumlab;

namespace {

Rational eval_at(const SparsePolynomial& poly, const std::vector<Rational>& point) { return poly.evaluate(point); }

SparsePolynomial random_polynomial(int nvars, std::mt19937_64& rng) {
  SparsePolynomial out(nvars);
  for (int t = 0; t < 12; ++t) {
    std::vector<int> e(nvars);
    for (int& v : e) v = static_cast<int>(rng() % 3);
    out.add_term(SparsePolynomial::pack(e), Integer(static_cast<long>(rng() % 21) - 10));
  }
  return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic agrees with evaluation") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const SparsePolynomial f = random_polynomial(4, rng);
    const SparsePolynomial g = random_polynomial(4, rng);
    for (int pt = 0; pt < 5; ++pt) {
      std::vector<Rational> x;
      for (int v = 0; v < 4; ++v) x.push_back(ratio(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4)));
      CHECK(eval_at(f + g, x) == eval_at(f, x) + eval_at(g, x));
      CHECK(eval_at(f - g, x) == eval_at(f, x) - eval_at(g, x));
      CHECK(eval_at(f * g, x) == eval_at(f, x) * eval_at(g, x));
      CHECK(eval_at(f.scaled(7), x) == 7 * eval_at(f, x));
    }
  }
}

TEST_CASE("polynomial basics") {
  const SparsePolynomial x1 = SparsePolynomial::variable(3, 1);
  const SparsePolynomial x2 = SparsePolynomial::variable(3, 2);
  const SparsePolynomial p = x1 * x1 - x2.scaled(3) + SparsePolynomial::constant(3, 5);
  CHECK(p.total_degree() == 2);
  CHECK(p.constant_term() == 5);
  CHECK(p.negative_count() == 1);
  CHECK_FALSE(p.all_nonnegative());
  CHECK(p.coefficient(std::vector<int>{2, 0, 0}) == 1);
  CHECK(p.to_string() == "x1^2 - 3*x2 + 5");
  CHECK((p - p).is_zero());
  const std::vector<int> e{1, 4, 2};
  CHECK(p.unpack(SparsePolynomial::pack(e)) == e);
}

TEST_CASE("elementary symmetric polynomial evaluates to e_d") {
  const std::vector<Rational> x{Rational(5), Rational(3), Rational(2), Rational(1)};
  const IndexSet subset{1, 3, 4};
  for (int d = 0; d <= 3; ++d) {
    CHECK(elementary_symmetric_polynomial(4, subset, d).evaluate(x) ==
          elementary_symmetric_over<Rational>(x, subset, d));
  }
}

TEST_CASE("expansion cap is enforced") {
  const SparsePolynomial e = elementary_symmetric_polynomial(6, IndexSet::range(1, 6), 3);
  SparsePolynomial small(6, 50);
  small += e;
  CHECK_THROWS_AS(small * e, ExpansionCapExceeded);
}

TEST_CASE("difference substitution") {
  const SparsePolynomial x1 = SparsePolynomial::variable(3, 1);
  const SparsePolynomial x2 = SparsePolynomial::variable(3, 2);
  const SparsePolynomial x3 = SparsePolynomial::variable(3, 3);
  CHECK(difference_substitution(x1 - x2) == x1);
  CHECK(difference_substitution(x3 - SparsePolynomial::constant(3, 1)) == x3);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const SparsePolynomial f = random_polynomial(4, rng);
    const SparsePolynomial g = difference_substitution(f);
    std::vector<Rational> s, x(4);
    for (int v = 0; v < 4; ++v) s.push_back(ratio(static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 3)));
    Rational tail = 1;
    for (int v = 3; v >= 0; --v) {
      tail += s[v];
      x[v] = tail;
    }
    CHECK(g.evaluate(s) == f.evaluate(x));
  }
}

TEST_CASE("cleared-denominator numerator reproduces the engine") {
  std::mt19937_64 rng(4);
  for (const auto& [scn, h] : enumerate_scenarios(4)) {
    const CusumNumerator num = cusum_numerator_polynomial(scn, h);
    const auto w = random_odds(scn.c, rng);
    CHECK(num.cusum_at(w) == cusum_at_aplus(AplusInstance(scn, w), h));
  }
}

TEST_CASE("certificates on small instances") {
  const Scenario desk = Scenario::representative(3, 1, 1, 1, 1);
  const CertificateResult res = certify_positivity(desk, CusumSubscript{2});
  CHECK(res.status == CertificateStatus::certified);
  CHECK(res.constant_term_sign == 1);
  CHECK(res.negative_coefficient_count == 0);

  const Scenario two = Scenario::representative(4, 2, 1, 2, 1);
  CHECK(certify_positivity(two, CusumSubscript{1, 3}).status == CertificateStatus::certified);
  CHECK(certificate_record(two, CusumSubscript{1, 3}, certify_positivity(two, CusumSubscript{1, 3})).verdict ==
        Verdict::pass);

  const CertificateResult zero = certify_positivity(two, CusumSubscript{4, 4});
  CHECK(zero.identically_zero);
  CHECK(zero.status == CertificateStatus::inconclusive);

  CertifyOptions tiny;
  tiny.cap = 10;
  tiny.fallback_samples = 5;
  tiny.seed = 3;
  const CertificateResult capped = certify_positivity(Scenario::representative(5, 2, 1, 2, 1), CusumSubscript{1, 3}, tiny);
  CHECK(capped.capped);
  REQUIRE(capped.fallback.has_value());
  CHECK(capped.fallback->verdict == Verdict::pass);
  CHECK(certificate_record(Scenario::representative(5, 2, 1, 2, 1), CusumSubscript{1, 3}, capped).verdict == Verdict::cap);
}

TEST_CASE("certified constant terms carry the equal-odds sign") {
  for (const auto& [scn, h] : enumerate_scenarios(4)) {
    const CertificateResult res = certify_positivity(scn, h);
    REQUIRE(res.status == CertificateStatus::certified);
    const Rational at_ones = cusum_at_aplus(AplusInstance(scn, OddsVector<Rational>::ones(scn.c)), h);
    CHECK(res.constant_term_sign == sgn(at_ones));
  }
}

TEST_CASE("numeric sweep verdicts") {
  const Scenario scn = Scenario::representative(4, 2, 1, 2, 1);
  CHECK(numeric_sweep(scn, CusumSubscript{1, 3}, 10, 1).verdict == Verdict::pass);
  CHECK(numeric_sweep(scn, CusumSubscript{4, 4}, 10, 1).verdict == Verdict::identically_zero);
  CHECK(numeric_sweep(scn, CusumSubscript{1, 3}, 10, 1) == numeric_sweep(scn, CusumSubscript{1, 3}, 10, 1));
  CHECK_THROWS_AS(numeric_sweep(scn, CusumSubscript{1, 3}, 0, 1), std::invalid_argument);
}

TEST_CASE("stage-one paths") {
  const auto w = oracle::odds({2, 1, 1});
  const Scenario scn = Scenario::representative(3, 1, 1, 1, 1);
  const VerificationRecord rec = theorem31_path_check(scn, CusumSubscript{2}, w);
  CHECK(rec.verdict == Verdict::pass);
  CHECK(rec.detail.at("shape") == "nondecreasing");

  // a+ end of the path at r = 1 and the path point x = r
  CHECK(cusum_at_aplus(AplusInstance(scn, w), CusumSubscript{2}) == Rational(1, 6));
  const Rational at_r = DirectEvaluator<Rational>(Configuration<Rational>::path(3, 1, 1, Rational(1), Rational(1)), w)
                            .cusum(scn.superscript, CusumSubscript{2});
  CHECK(at_r == oracle::cusum({1, 1, 0}, w.entries(), 1, 1, {1}, {2}));
  CHECK(at_r > Rational(1, 6));

  const Scenario degenerate = Scenario::full(4, 2, 1);
  for (const auto& wd : {oracle::odds({3, 2, 1, 1}), oracle::odds({5, 5, 1, 1})}) {
    const VerificationRecord flat = theorem31_path_check(degenerate, CusumSubscript{2, 1, 3}, wd);
    CHECK(flat.verdict == Verdict::pass);
    CHECK(flat.detail.at("shape") == "constant");
    CHECK(flat.detail.at("G_at_r") == flat.detail.at("G_at_0plus"));
  }
  const VerificationRecord equal = theorem31_path_check(Scenario::full(5, 2, 1), CusumSubscript{3, 2, 1, 4},
                                                        OddsVector<Rational>::ones(5));
  CHECK(equal.detail.at("shape") == "constant");
  CHECK_THROWS_AS(theorem31_path_check(scn, CusumSubscript{2}, w, 4), std::invalid_argument);
}
