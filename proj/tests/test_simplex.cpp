#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cusumlab/aplus.hpp"
#include "cusumlab/lemmas.hpp"
#include "cusumlab/sampling.hpp"
#include "cusumlab/simplex.hpp"
#include "oracle.hpp"

using namespace cusumlab;

TEST_CASE("simplex vectors") {
  const auto v = simplex_vector(2, Rational(3), 4);
  CHECK(v.entries() == std::vector<Rational>{3, 3, 1, 1});
  CHECK(v.lambda() == 2);
  CHECK(simplex_vector(3, Rational(1), 5).all_equal());
  CHECK(simplex_vector(2, 2.5, 4).entries() == std::vector<double>{2.5, 2.5, 1.0, 1.0});
}

TEST_CASE("large-omega limits of the cross-product ratio") {
  CHECK(limit_ratio_47(48, 22, 25, 10) == Rational(325, 1128));
  CHECK(limit_ratio_47(48, 22, 25, 25) == Rational(325, 1128));
  CHECK(limit_ratio_47(48, 22, 25, 30) == Rational(7475, 1128));
}

TEST_CASE("bracketing limits coincide at the right-hand constant") {
  for (int c = 3; c <= 20; ++c) {
    for (int b = 1; b < c - 1; ++b) {
      for (int k = 1; k <= c - b - 1; ++k) {
        const Rational lhs = Rational(binomial(c - b - 1, k)) * (1 - ratio(k, c)) * (1 - ratio(k, c - 1)) /
                             (1 - ratio(k, c - b));
        const Rational rhs = Rational(binomial(c - b, k) * binomial(c - k, 2)) / Rational(binomial(c, 2));
        CHECK(lhs == rhs);
        CHECK(rhs == rhs_constant(c, b, k, 2));
      }
    }
  }
}

TEST_CASE("closed form agrees with the generic engine at rational omega") {
  const int c = 8, b = 4, k = 2;
  const Scenario scn = Scenario::representative(c, b, k, 2, 1);
  const std::vector<Rational> omegas{Rational(1), Rational(3, 2), Rational(2), Rational(5, 2), Rational(3),
                                     Rational(4), Rational(7), Rational(10), Rational(50), Rational(1000)};
  for (int h2 = 2; h2 <= c - 1; ++h2) {
    for (const Rational& omega : omegas) {
      const AplusInstance inst(scn, simplex_vector(b, omega, c));
      const SimplexTerms<Rational> terms = simplex_terms(omega, c, b, k, h2);
      CHECK(terms.middle == weighted_average_44(inst, CusumSubscript{1, h2}));
      CHECK(terms.top == summed_cross_product_ratio(inst, IndexSet{1, b}));
      CHECK(weighted_average_A(omega, c, b, k, h2) == terms.middle);
      if (h2 <= b) CHECK(terms.middle == terms.top);
      const Rational lo = std::min(terms.top, terms.bottom), hi = std::max(terms.top, terms.bottom);
      if (h2 > b) CHECK((lo <= terms.middle && terms.middle <= hi));
    }
  }
}

TEST_CASE("initial value of the weighted average") {
  CHECK(weighted_average_A(Rational(1), 48, 25, 22, 47) == Rational(287, 23));
  for (int h2 = 2; h2 <= 7; ++h2) {
    const Rational a1 = weighted_average_A(Rational(1), 8, 3, 2, h2);
    CHECK(a1 == lemma41_average(8, 3, 2, 2, CusumSubscript{1, h2}));
    if (h2 > 3) {
      const Rational closed = ratio(3 - 1, h2 - 1) * Rational(binomial(5, 2)) + ratio(h2 - 3, h2 - 1) * Rational(binomial(4, 2));
      CHECK(a1 == closed);
    }
  }
  CHECK(std::abs(weighted_average_A(1.0, 48, 25, 22, 47) - 287.0 / 23.0) < 1e-12);
}

TEST_CASE("log grid and sign change counting") {
  const auto grid = log_grid(GridSpec{1e6, 400});
  CHECK(grid.size() == 400);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == 1e6);
  for (std::size_t t = 1; t < grid.size(); ++t) CHECK(grid[t] > grid[t - 1]);
  CHECK(count_sign_changes({5, 4, 3, 2, 1}) == 0);
  CHECK(count_sign_changes({5, 4, 3, 4, 5}) == 1);
  CHECK(count_sign_changes({5, 4, 3, 4, 2}) == 2);
  CHECK(count_sign_changes({1, 1 + 1e-15, 1, 1 + 1e-15}) == 0);
}

TEST_CASE("figure curve checks and CSV output") {
  const auto path = std::filesystem::temp_directory_path() / "cusumlab_test_figure.csv";
  const BoundaryCurve curve = emit_figure1(path.string(), GridSpec{});
  CHECK(curve.initial_value == Rational(287, 23));
  CHECK(curve.limit_value == Rational(7475, 1128));
  CHECK(curve.above_limit);
  CHECK(curve.sign_changes <= 2);
  CHECK(curve.end_relative_gap < 1e-3);
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "omega,top,bottom,middle");
  CHECK(first.rfind("1,", 0) == 0);
  CHECK(first.substr(first.rfind(',') + 1).rfind("12.4782608695652", 0) == 0);
  int lines = 2;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 401);
  std::filesystem::remove(path);
  for (const auto& rec : scan_records(curve, "figure1")) CHECK(rec.verdict != Verdict::fail);
}

TEST_CASE("scan input validation") {
  CHECK_THROWS_AS(scan_A(8, 1, 2, 5, GridSpec{}), std::invalid_argument);
  CHECK_THROWS_AS(scan_A(8, 4, 4, 5, GridSpec{}), std::invalid_argument);
  CHECK_THROWS_AS(scan_A(8, 4, 2, 1, GridSpec{}), std::invalid_argument);
  CHECK_THROWS(write_curve_csv(scan_A(8, 4, 2, 5, GridSpec{10, 5}), "/nonexistent-dir/x.csv"));
}

TEST_CASE("omega-star search finds a boundary vector or reports") {
  std::mt19937_64 rng(42);
  int found = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const auto w = random_odds(6, rng);
    const OmegaStarResult res = omega_star_search(w, 3, 1, 5);
    if (res.multiplier) {
      ++found;
      REQUIRE(res.a_value.has_value());
      CHECK(res.wtd_avg >= *res.a_value);
    }
  }
  MESSAGE("omega-star found for " << found << " of 20 draws");
}
