#include "cusumlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "cusumlab/aplus.hpp"
#include "cusumlab/scalar.hpp"

namespace cusumlab {

namespace {

template <class T>
T int_power(const T& base, int n) {
  T out = 1;
  T factor = n >= 0 ? base : T(1 / base);
  for (int t = 0; t < std::abs(n); ++t) out *= factor;
  return out;
}

template <>
double int_power(const double& base, int n) {
  return std::pow(base, n);
}

/// e_d over alpha copies of omega and beta ones, as mantissa * omega^exponent.
template <class T>
struct Scaled {
  T mantissa;
  int exponent;
};

template <class T>
Scaled<T> two_valued_esym(const T& omega, int alpha, int beta, int d) {
  const int top = std::min(alpha, d);
  T sum = 0;
  const T inv = T(1 / omega);
  T scale = 1;  // omega^(t - top), walking t downward from top
  for (int t = top; t >= 0 && d - t <= beta; --t) {
    sum += from_integer<T>(binomial(alpha, t) * binomial(beta, d - t)) * scale;
    scale *= inv;
  }
  return {sum, top};
}

template <class T>
T normalized_ratio(const T& omega, const Scaled<T>& a, const Scaled<T>& b, const Scaled<T>& c_, const Scaled<T>& d) {
  const T mant = a.mantissa * b.mantissa / (c_.mantissa * d.mantissa);
  const int e = a.exponent + b.exponent - c_.exponent - d.exponent;
  return e == 0 ? mant : T(mant * int_power(omega, e));
}

/// R_{J.} for J = {1, j2} at W^(b)(omega), q = 1, p = 2. high_in_j counts members of J in {1..b}.
template <class T>
T simplex_ratio(const T& omega, int c, int b, int k, int high_in_j) {
  const int low_in_j = 2 - high_in_j;
  const Scaled<T> num1 = two_valued_esym(omega, b - high_in_j, c - b - low_in_j - k, b - 1);
  const Scaled<T> num2 = two_valued_esym(omega, b, c - b, b);
  const Scaled<T> den1 = two_valued_esym(omega, b - high_in_j, c - b - low_in_j, b - 1);
  const Scaled<T> den2 = two_valued_esym(omega, b, c - b - k, b);
  const T norm = from_rational<T>(ratio(binomial(c - 2, b - 1) * binomial(c - k, b),
                                        binomial(c - k - 2, b - 1) * binomial(c, b)));
  return normalized_ratio(omega, num1, num2, den1, den2) * norm;
}

void check_simplex_args(int c, int b, int k, int h2) {
  if (c < 4) throw std::invalid_argument("simplex curves need c >= 4");
  if (b < 2 || b > c - 2) throw std::invalid_argument("simplex curves need 2 <= b <= c-2");
  if (k < 1 || k > c - b - 1) throw std::invalid_argument("simplex curves need 1 <= k <= c-b-1");
  if (h2 < 2 || h2 > c - 1) throw std::invalid_argument("simplex curves need 2 <= h2 <= c-1");
}

}  // namespace

OddsVector<Rational> simplex_vector(int g, const Rational& omega, int c) {
  if (g < 1 || g > c - 1) throw std::invalid_argument("simplex_vector needs 1 <= g <= c-1");
  if (omega < 1) throw std::invalid_argument("simplex_vector needs omega >= 1");
  std::vector<Rational> w(static_cast<std::size_t>(c), Rational(1));
  std::fill(w.begin(), w.begin() + g, omega);
  return OddsVector<Rational>(std::move(w));
}

OddsVector<double> simplex_vector(int g, double omega, int c) {
  if (g < 1 || g > c - 1) throw std::invalid_argument("simplex_vector needs 1 <= g <= c-1");
  if (!(omega >= 1)) throw std::invalid_argument("simplex_vector needs omega >= 1");
  std::vector<double> w(static_cast<std::size_t>(c), 1.0);
  std::fill(w.begin(), w.begin() + g, omega);
  return OddsVector<double>(std::move(w));
}

Rational limit_ratio_47(int c, int k, int g, int j2) {
  if (j2 < 2 || j2 > c - 1) throw std::invalid_argument("limit_ratio_47 needs 2 <= j2 <= c-1");
  if (g < 1 || g > c - 1) throw std::invalid_argument("limit_ratio_47 needs 1 <= g <= c-1");
  if (k < 1 || k >= c - 1) throw std::invalid_argument("limit_ratio_47 needs 1 <= k < c-1");
  const Rational base = (1 - ratio(k, c)) * (1 - ratio(k, c - 1));
  if (j2 <= g) return base;
  if (c - g == k) throw std::invalid_argument("limit_ratio_47: c - g = k zeroes the divisor");
  return base / (1 - ratio(k, c - g));
}

template <class T>
SimplexTerms<T> simplex_terms(const T& omega, int c, int b, int k, int h2) {
  check_simplex_args(c, b, k, h2);
  if (omega < 1) throw std::invalid_argument("simplex curves need omega >= 1");
  SimplexTerms<T> out;
  out.top = from_integer<T>(binomial(c - b, k)) * simplex_ratio(omega, c, b, k, 2);
  out.bottom = from_integer<T>(binomial(c - b - 1, k)) * simplex_ratio(omega, c, b, k, 1);
  if (h2 <= b) {
    out.weight_top = 1;
    out.middle = out.top;
    return out;
  }
  // u_J = e_{b-1}(C \ J): scaled by omega^(b-2) for J = {1,b}, omega^(b-1) for J = {1,b+1}.
  const Scaled<T> u_top = two_valued_esym(omega, b - 2, c - b, b - 1);
  const Scaled<T> u_bottom = two_valued_esym(omega, b - 1, c - b - 1, b - 1);
  const T lhs = from_integer<T>(Integer(b - 1)) * u_top.mantissa;
  const T rhs = from_integer<T>(Integer(h2 - b)) * u_bottom.mantissa *
                int_power(omega, u_bottom.exponent - u_top.exponent);
  out.weight_top = lhs / (lhs + rhs);
  out.middle = out.weight_top * out.top + (1 - out.weight_top) * out.bottom;
  return out;
}

template <class T>
T weighted_average_A(const T& omega, int c, int b, int k, int h2) {
  return simplex_terms(omega, c, b, k, h2).middle;
}

template SimplexTerms<Rational> simplex_terms(const Rational&, int, int, int, int);
template SimplexTerms<double> simplex_terms(const double&, int, int, int, int);
template Rational weighted_average_A(const Rational&, int, int, int, int);
template double weighted_average_A(const double&, int, int, int, int);

std::vector<double> log_grid(const GridSpec& grid) {
  if (grid.points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(grid.omega_max > 1)) throw std::invalid_argument("grid needs omega_max > 1");
  std::vector<double> out(static_cast<std::size_t>(grid.points));
  const double span = std::log(grid.omega_max);
  for (int i = 0; i < grid.points; ++i) out[i] = std::exp(span * i / (grid.points - 1));
  out.front() = 1.0;
  out.back() = grid.omega_max;
  return out;
}

int count_sign_changes(const std::vector<double>& values, double dead_band) {
  int changes = 0;
  int last = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double diff = values[i + 1] - values[i];
    if (std::abs(diff) <= dead_band * std::abs(values[i])) continue;
    const int s = diff > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

BoundaryCurve scan_A(int c, int b, int k, int h2, const GridSpec& grid) {
  check_simplex_args(c, b, k, h2);
  BoundaryCurve curve;
  curve.c = c;
  curve.b = b;
  curve.k = k;
  curve.h2 = h2;
  curve.omega_grid = log_grid(grid);
  for (double omega : curve.omega_grid) {
    const SimplexTerms<double> t = simplex_terms(omega, c, b, k, h2);
    curve.top.push_back(t.top);
    curve.bottom.push_back(t.bottom);
    curve.middle.push_back(t.middle);
  }
  curve.limit_value = rhs_constant(c, b, k, 2);
  curve.initial_value = weighted_average_A(Rational(1), c, b, k, h2);
  const double limit = curve.limit_value.get_d();
  curve.above_limit = std::all_of(curve.middle.begin(), curve.middle.end(), [&](double v) { return v > limit; });
  curve.sign_changes = count_sign_changes(curve.middle);
  if (curve.sign_changes == 2) {
    // down-up-down: the early local minimum sits where the first decrease ends
    double early_min = curve.middle.front();
    for (std::size_t i = 1; i < curve.middle.size() && curve.middle[i] <= curve.middle[i - 1]; ++i) {
      early_min = curve.middle[i];
    }
    curve.initial_minimum_above = early_min > limit;
  }
  double gap = std::abs(curve.middle.back() - limit);
  gap = std::max(gap, std::abs(curve.top.back() - limit));
  if (h2 > b) gap = std::max(gap, std::abs(curve.bottom.back() - limit));
  curve.end_relative_gap = gap / limit;
  return curve;
}

std::vector<VerificationRecord> scan_records(const BoundaryCurve& curve, const std::string& command) {
  ScenarioFields scn;
  scn.c = curve.c;
  scn.b = curve.b;
  scn.k = curve.k;
  scn.p = 2;
  scn.q = 1;
  scn.h = std::vector<int>{1, curve.h2};
  auto make = [&](std::string quantity, std::string value, Verdict verdict) {
    VerificationRecord rec;
    rec.command = command;
    rec.scenario = scn;
    rec.quantity = std::move(quantity);
    rec.value = std::move(value);
    rec.verdict = verdict;
    rec.detail["limit_value"] = format_value(curve.limit_value);
    rec.detail["omega_max"] = format_value(curve.omega_grid.back());
    rec.detail["points"] = std::to_string(curve.omega_grid.size());
    return rec;
  };
  std::vector<VerificationRecord> out;
  out.push_back(make("A_initial", format_value(curve.initial_value),
                     curve.initial_value > curve.limit_value ? Verdict::pass : Verdict::fail));
  const double min_middle = *std::min_element(curve.middle.begin(), curve.middle.end());
  out.push_back(make("A_min_over_grid", format_value(min_middle), curve.above_limit ? Verdict::pass : Verdict::fail));
  out.push_back(make("end_relative_gap", format_value(curve.end_relative_gap),
                     curve.end_relative_gap < 1e-3 ? Verdict::pass : Verdict::report));
  out.push_back(make("derivative_sign_changes", std::to_string(curve.sign_changes),
                     curve.sign_changes <= 2 ? Verdict::pass : Verdict::report));
  if (curve.initial_minimum_above) {
    out.push_back(make("early_minimum_above_limit", *curve.initial_minimum_above ? "true" : "false",
                       *curve.initial_minimum_above ? Verdict::pass : Verdict::report));
  }
  return out;
}

void write_curve_csv(const BoundaryCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "omega,top,bottom,middle\n";
  char line[128];
  for (std::size_t i = 0; i < curve.omega_grid.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", curve.omega_grid[i], curve.top[i],
                  curve.bottom[i], curve.middle[i]);
    out << line;
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

BoundaryCurve emit_figure1(const std::string& path, const GridSpec& grid, int h2) {
  BoundaryCurve curve = scan_A(48, 25, 22, h2, grid);
  write_curve_csv(curve, path);
  return curve;
}

OmegaStarResult omega_star_search(const OddsVector<Rational>& w, int b, int k, int h2, int max_doublings) {
  const int c = w.c();
  check_simplex_args(c, b, k, h2);
  OmegaStarResult out;
  out.wtd_avg = weighted_average_44(AplusInstance(c, b, k, 2, 1, w), CusumSubscript{1, h2});
  int m = 1;
  for (int t = 0; t <= max_doublings; ++t, m *= 2) {
    const Rational a = weighted_average_A(Rational(m * w[1]), c, b, k, h2);
    if (out.wtd_avg >= a) {
      out.multiplier = m;
      out.a_value = a;
      break;
    }
  }
  return out;
}

}  // namespace cusumlab
