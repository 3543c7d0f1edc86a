#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include "cusumlab/combinatorics.hpp"
#include "cusumlab/muirhead.hpp"

namespace cusumlab {

/// Generator for one work item; the stream depends only on the seed and the keys.
std::mt19937_64 work_rng(std::uint64_t seed, std::span<const int> keys);
std::mt19937_64 work_rng(std::uint64_t seed, std::initializer_list<int> keys);

/// w_j = 1 + n_j/64 with n_j uniform on {0..256}, sorted descending.
OddsVector<Rational> random_odds(int c, std::mt19937_64& rng);

/// count draws; draw 0 is the all-ones vector.
std::vector<OddsVector<Rational>> sample_odds(int c, int count, std::mt19937_64& rng);

/// Integer exponents with a_b = r in {1..3}, leading entries in [r, r+3], middle
/// entries in [1, r], k zeros. Every such vector weakly submajorizes a* and differs from it.
Configuration<Rational> random_configuration(int c, int b, int k, std::mt19937_64& rng);

}  // namespace cusumlab
