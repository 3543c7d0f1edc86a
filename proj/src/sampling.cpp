#include "cusumlab/sampling.hpp"

#include <algorithm>
#include <functional>

namespace cusumlab {

std::mt19937_64 work_rng(std::uint64_t seed, std::initializer_list<int> keys) {
  return work_rng(seed, std::span<const int>(keys.begin(), keys.size()));
}

std::mt19937_64 work_rng(std::uint64_t seed, std::span<const int> keys) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (int key : keys) material.push_back(static_cast<std::uint32_t>(key));
  std::seed_seq seq(material.begin(), material.end());
  return std::mt19937_64(seq);
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  // modulo reduction keeps the stream identical across standard libraries
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

OddsVector<Rational> random_odds(int c, std::mt19937_64& rng) {
  std::vector<int> n(static_cast<std::size_t>(c));
  for (int& v : n) v = uniform_int(rng, 0, 256);
  std::sort(n.begin(), n.end(), std::greater<>());
  std::vector<Rational> w;
  w.reserve(n.size());
  for (int v : n) w.push_back(1 + ratio(v, 64));
  return OddsVector<Rational>(std::move(w));
}

std::vector<OddsVector<Rational>> sample_odds(int c, int count, std::mt19937_64& rng) {
  std::vector<OddsVector<Rational>> out;
  if (count <= 0) return out;
  out.push_back(OddsVector<Rational>::ones(c));
  while (static_cast<int>(out.size()) < count) out.push_back(random_odds(c, rng));
  return out;
}

Configuration<Rational> random_configuration(int c, int b, int k, std::mt19937_64& rng) {
  const int r = uniform_int(rng, 1, 3);
  std::vector<int> lead(static_cast<std::size_t>(b - 1));
  for (int& v : lead) v = uniform_int(rng, r, r + 3);
  std::vector<int> middle(static_cast<std::size_t>(c - b - k));
  for (int& v : middle) v = uniform_int(rng, 1, r);
  std::sort(lead.begin(), lead.end(), std::greater<>());
  std::sort(middle.begin(), middle.end(), std::greater<>());
  std::vector<Rational> a;
  for (int v : lead) a.emplace_back(v);
  a.emplace_back(r);
  for (int v : middle) a.emplace_back(v);
  for (int t = 0; t < k; ++t) a.emplace_back(0);
  return Configuration<Rational>(std::move(a), b, k);
}

}  // namespace cusumlab
