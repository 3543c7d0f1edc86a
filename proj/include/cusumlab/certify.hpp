#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cusumlab/aplus.hpp"
#include "cusumlab/muirhead.hpp"
#include "cusumlab/polynomial.hpp"
#include "cusumlab/record.hpp"

namespace cusumlab {

/// Cleared-denominator form of a cusum at a+:
///   cusum(w) = numerator(w) / (prefactor * e_b(C)(w) * prod_K e_b(C \ K)(w)).
struct CusumNumerator {
  int c = 0, b = 0, k = 0;
  SparsePolynomial numerator;
  Rational prefactor;
  /// The positive denominator at w, prefactor included.
  Rational denominator_at(const OddsVector<Rational>& w) const;
  Rational cusum_at(const OddsVector<Rational>& w) const;
};

/// Supports c <= 8; throws ExpansionCapExceeded when the cap is hit.
CusumNumerator cusum_numerator_polynomial(const Scenario& scn, const CusumSubscript& h,
                                          std::size_t cap = SparsePolynomial::kDefaultCap);

enum class CertificateStatus { certified, inconclusive };
std::string to_string(CertificateStatus status);

struct CertificateResult {
  CertificateStatus status = CertificateStatus::inconclusive;
  bool identically_zero = false;
  bool capped = false;
  int constant_term_sign = 0;
  std::size_t negative_coefficient_count = 0;
  std::size_t term_count = 0;
  std::optional<VerificationRecord> fallback;
};

struct CertifyOptions {
  std::size_t cap = SparsePolynomial::kDefaultCap;
  /// Seeded exact samples to evaluate when the certificate is inconclusive (0 skips the fallback).
  int fallback_samples = 0;
  std::uint64_t seed = 0;
};

/// Certified iff the difference-substituted numerator has only nonnegative
/// coefficients and a positive constant term. Inconclusive is not a refutation.
CertificateResult certify_positivity(const Scenario& scn, const CusumSubscript& h, const CertifyOptions& options = {});
VerificationRecord certificate_record(const Scenario& scn, const CusumSubscript& h, const CertificateResult& result);

/// Evaluates the a+ cusum at `samples` seeded odds vectors (draw 0 all-ones).
/// Verdict pass iff every value is > 0, identically-zero iff every value is 0.
VerificationRecord numeric_sweep(const Scenario& scn, const CusumSubscript& h, int samples, std::uint64_t seed);

/// Stage-one path G(x) = S_(h)(r,...,r,x,...,x,0,...,0) at r = grid, x = 1..grid, plus
/// the a+ limit at x -> 0. Positivity is exact; monotonicity allows 1e-9 relative slack.
VerificationRecord theorem31_path_check(const Scenario& scn, const CusumSubscript& h, const OddsVector<Rational>& w,
                                        int grid = 8);

}  // namespace cusumlab
