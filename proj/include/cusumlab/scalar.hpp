#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "cusumlab/combinatorics.hpp"

namespace cusumlab {

/// Per-scalar operations for the two evaluation modes: exact rationals
/// (integer exponents only) and 64-bit floats (log-domain powers).
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational from_int(long v) { return Rational(v); }
  static Rational power(const Rational& base, const Rational& exponent) {
    if (exponent.get_den() != 1 || exponent < 0) {
      throw std::domain_error("exact mode needs non-negative integer exponents, got " + to_string(exponent));
    }
    if (!exponent.get_num().fits_ulong_p()) throw std::domain_error("exponent too large");
    const unsigned long e = exponent.get_num().get_ui();
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
  }
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static double from_int(long v) { return static_cast<double>(v); }
  static double power(double base, double exponent) {
    if (exponent == 0.0) return 1.0;
    return std::exp(exponent * std::log(base));
  }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
};

template <class T>
T from_integer(const Integer& v) {
  if constexpr (ScalarOps<T>::exact) {
    return Rational(v);
  } else {
    return v.get_d();
  }
}

template <class T>
T from_rational(const Rational& v) {
  if constexpr (ScalarOps<T>::exact) {
    return v;
  } else {
    return v.get_d();
  }
}

}  // namespace cusumlab
