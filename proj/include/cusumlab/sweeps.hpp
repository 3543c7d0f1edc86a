#pragma once

#include <cstdint>
#include <vector>

#include "cusumlab/record.hpp"

namespace cusumlab {

/// Batch verification runners. Each returns records already sorted with
/// sort_records, so output never depends on worker scheduling.

/// Engine-versus-permutation-enumeration at a+, one record per scenario.
std::vector<VerificationRecord> oracle_sweep(int c_max, int w_samples, std::uint64_t seed);

/// Minimum a+ cusum over the draws, one record per (scenario, h). With
/// check_inequality set, also confirms the weighted-average criterion agrees
/// with the cusum sign at every draw.
std::vector<VerificationRecord> lemma21_sweep(int c_max, int w_samples, std::uint64_t seed, bool check_inequality);

/// Equal-odds margins (strict below c, equality at (c,...,c)), the q_p pmf
/// against the hypergeometric law (c up to hypergeometric_c_max), and dominance.
std::vector<VerificationRecord> lemma41_sweep(int c_max, int hypergeometric_c_max = 8);

/// Single-index sign pattern, one record per (c, b, k, q).
std::vector<VerificationRecord> lemma42_sweep(int c_max, int w_samples, std::uint64_t seed);

/// Cross-product ratio bounds per (c, b, k, j) and the split-average identity per (c, b, k, q).
std::vector<VerificationRecord> lemma43_sweep(int c_max, int w_samples, std::uint64_t seed);

/// Random integer-exponent configurations (full superscript cusums) per (c, b, k),
/// plus stage-one G paths per (scenario, h) over path_samples odds draws.
std::vector<VerificationRecord> theorem31_sweep(int c_max, int samples, int path_samples, std::uint64_t seed);

/// Certificate per (scenario, h); certified instances are cross-checked by a
/// numeric sweep and the constant-term sign is compared with the equal-odds margin.
std::vector<VerificationRecord> certify_sweep(int c_max, int samples, std::uint64_t seed);

bool any_failure(const std::vector<VerificationRecord>& records);

}  // namespace cusumlab
