#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cusumlab/combinatorics.hpp"
#include "cusumlab/muirhead.hpp"
#include "cusumlab/record.hpp"

namespace cusumlab {

/// (omega, ..., omega, 1, ..., 1) with g leading omegas.
OddsVector<Rational> simplex_vector(int g, const Rational& omega, int c);
OddsVector<double> simplex_vector(int g, double omega, int c);

/// Large-omega limit of the average cross-product ratio for J = {1, j2}, p = 2, q = 1.
Rational limit_ratio_47(int c, int k, int g, int j2);

/// Curves at the simplex boundary vector with g = b and h = (1, h2).
template <class T>
struct SimplexTerms {
  T top;     // C(c-b,k) R_{{1,b}.}
  T bottom;  // C(c-b-1,k) R_{{1,b+1}.}; zero when b + 1 > c - 1
  T middle;  // A(omega)
  T weight_top;
};

/// Closed-form evaluation: with two-valued w, every tuplet sum is
/// e_d = sum_t C(alpha,t) C(beta,d-t) omega^t.
template <class T>
SimplexTerms<T> simplex_terms(const T& omega, int c, int b, int k, int h2);

template <class T>
T weighted_average_A(const T& omega, int c, int b, int k, int h2);

struct GridSpec {
  double omega_max = 1e6;
  int points = 400;
};

/// points log-spaced values from 1 to omega_max, both ends exact.
std::vector<double> log_grid(const GridSpec& grid);

struct BoundaryCurve {
  int c = 0, b = 0, k = 0, h2 = 0;
  std::vector<double> omega_grid;
  std::vector<double> top, bottom, middle;
  int sign_changes = 0;
  Rational limit_value;    // rhs constant, the common limit of the bracketing curves
  Rational initial_value;  // A(1)
  bool above_limit = false;
  /// Set when there are two sign changes: whether the early local minimum exceeds the limit.
  std::optional<bool> initial_minimum_above;
  double end_relative_gap = 0;  // max over the three curves of |value - limit| / limit at omega_max
};

/// Finite-difference sign changes with a dead-band relative to the current value.
int count_sign_changes(const std::vector<double>& values, double dead_band = 1e-12);

BoundaryCurve scan_A(int c, int b, int k, int h2, const GridSpec& grid);

/// Verdict records for a scanned curve: positivity margin (fail on violation),
/// sign-change count and quasi-unimodality (report grade).
std::vector<VerificationRecord> scan_records(const BoundaryCurve& curve, const std::string& command);

void write_curve_csv(const BoundaryCurve& curve, const std::string& path);
/// Figure-1 data: c = 48, b = g = 25, k = 22. Throws std::runtime_error on I/O failure.
BoundaryCurve emit_figure1(const std::string& path, const GridSpec& grid, int h2 = 47);

struct OmegaStarResult {
  Rational wtd_avg;
  std::optional<int> multiplier;  // smallest m in 1, 2, 4, ... with WtdAvg(w) >= A(m w_1)
  std::optional<Rational> a_value;
};

/// Searches m = 1, 2, 4, ..., 2^max_doublings for a boundary vector with
/// A(m w_1) <= WtdAvg(w) at h = (1, h2), p = 2, q = 1.
OmegaStarResult omega_star_search(const OddsVector<Rational>& w, int b, int k, int h2, int max_doublings = 10);

}  // namespace cusumlab
