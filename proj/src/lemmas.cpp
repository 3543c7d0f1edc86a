#include "cusumlab/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cusumlab {

Rational lemma41_average(int c, int b, int k, int p, const CusumSubscript& h) {
  if (h.p() != p) throw std::invalid_argument("lemma41_average: |h| != p");
  h.validate(c);
  if (!is_contributing(h)) throw std::invalid_argument("lemma41_average: h is not contributing");
  Integer total = 0;
  long count = 0;
  std::vector<bool> used(static_cast<std::size_t>(c) + 1, false);
  std::function<void(int, int)> walk = [&](int alpha, int q_prime) {
    if (alpha > p) {
      total += binomial(c - b - p + q_prime, k);
      ++count;
      return;
    }
    for (int v = 1; v <= h[alpha]; ++v) {
      if (used[v]) continue;
      used[v] = true;
      walk(alpha + 1, q_prime + (v <= b ? 1 : 0));
      used[v] = false;
    }
  };
  walk(1, 0);
  return ratio(total, count);
}

Rational QpDistribution::prob(int q) const {
  auto it = pmf.find(q);
  return it == pmf.end() ? Rational(0) : it->second;
}

Rational QpDistribution::survival(int q) const {
  Rational out = 0;
  for (const auto& [value, mass] : pmf) {
    if (value > q) out += mass;
  }
  return out;
}

Rational QpDistribution::mean() const {
  Rational out = 0;
  for (const auto& [value, mass] : pmf) out += value * mass;
  return out;
}

QpDistribution qp_distribution(const CusumSubscript& h, int b, int c, int p) {
  if (h.p() != p) throw std::invalid_argument("qp_distribution: |h| != p");
  h.validate(c);
  if (b < 1 || b >= c) throw std::invalid_argument("qp_distribution: needs 1 <= b < c");
  QpDistribution dist;
  dist.h = h.entries();
  std::sort(dist.h.begin(), dist.h.end());
  dist.b = b;
  dist.c = c;
  dist.p = p;
  // Every earlier draw is <= h'_alpha <= h'_{alpha+1}, so the choice set at
  // step alpha+1 has h'_{alpha+1} - alpha members, min(b, h'_{alpha+1}) - q of them <= b.
  std::map<int, Rational> state{{0, Rational(1)}};
  for (int alpha = 0; alpha < p; ++alpha) {
    const int bound = dist.h[alpha];
    const int available = bound - alpha;
    if (available <= 0) throw std::invalid_argument("qp_distribution: empty choice set (h not contributing)");
    std::map<int, Rational> next;
    for (const auto& [q, mass] : state) {
      const int low = std::min(b, bound) - q;
      if (low > 0) next[q + 1] += mass * ratio(low, available);
      if (available - low > 0) next[q] += mass * ratio(available - low, available);
    }
    state = std::move(next);
  }
  dist.pmf = std::move(state);
  return dist;
}

Rational hypergeometric_pmf(int b, int p, int c, int q) {
  if (q < 0 || q > p) return 0;
  if (p - q > c - b) return 0;
  return ratio(binomial(b, q) * binomial(c - b, p - q), binomial(c, p));
}

VerificationRecord check_stochastic_dominance(const CusumSubscript& h, int b, int c, int p) {
  const QpDistribution constrained = qp_distribution(h, b, c, p);
  const QpDistribution free = qp_distribution(CusumSubscript::constant(p, c), b, c, p);
  bool dominated = true;
  bool strict = false;
  for (int q = -1; q <= p; ++q) {
    const Rational lhs = constrained.survival(q);
    const Rational rhs = free.survival(q);
    if (lhs < rhs) dominated = false;
    if (lhs > rhs) strict = true;
  }
  VerificationRecord rec;
  rec.command = "verify lemma41";
  rec.scenario.c = c;
  rec.scenario.b = b;
  rec.scenario.p = p;
  rec.scenario.h = h.entries();
  rec.quantity = "qp_mean_shift";
  rec.value = format_value(Rational(constrained.mean() - free.mean()));
  rec.verdict = !dominated ? Verdict::fail : (strict ? Verdict::pass : Verdict::report);
  rec.detail["dominance"] = !dominated ? "violated" : (strict ? "strict" : "all-equal");
  return rec;
}

bool SignPattern::monotone(int b) const {
  for (std::size_t t = 0; t < signs.size(); ++t) {
    const int expected = static_cast<int>(t) + 1 <= b ? 1 : -1;
    if (signs[t] != expected) return false;
  }
  return true;
}

SignPattern single_index_signs(int c, int b, int k, int q, const OddsVector<Rational>& w) {
  if (q != 0 && q != 1) throw std::invalid_argument("single_index_signs: q must be 0 or 1");
  const AplusEvaluator engine(AplusInstance(c, b, k, 1, q, w));
  SignPattern out;
  for (int j = 1; j <= c; ++j) {
    out.values.push_back(engine.component(CusumSubscript{j}));
    out.signs.push_back(sign(out.values.back()));
  }
  return out;
}

VerificationRecord check_lemma43_bounds(int c, int b, int k, int j, const OddsVector<Rational>& w) {
  if (j < 1 || j > c) throw std::invalid_argument("check_lemma43_bounds: j outside 1..c");
  const int q = j <= b ? 0 : 1;
  const AplusInstance inst(c, b, k, 1, q, w);
  const Rational r = avg_cross_product_ratio(inst, IndexSet{j});
  const Rational shrink = 1 - ratio(k, c);
  const Rational bound = j <= b ? shrink : Rational(shrink / (1 - ratio(k, c - b)));
  const bool holds = j <= b ? r >= bound : r <= bound;
  VerificationRecord rec;
  rec.command = "verify lemma43";
  rec.scenario.c = c;
  rec.scenario.b = b;
  rec.scenario.k = k;
  rec.scenario.p = 1;
  rec.scenario.q = q;
  rec.scenario.h = std::vector<int>{j};
  rec.w = w.entries();
  rec.quantity = "avg_cross_product_ratio";
  rec.value = format_value(r);
  rec.verdict = holds ? Verdict::pass : Verdict::fail;
  rec.detail[j <= b ? "lower_bound" : "upper_bound"] = format_value(bound);
  return rec;
}

bool Decomposition46::identity_holds() const {
  Rational combined = weight_plus * avg_plus;
  if (avg_minus) combined += weight_minus * *avg_minus;
  return combined == rhs;
}

Decomposition46 avg_decomposition_46(int c, int b, int k, int q, int h, const OddsVector<Rational>& w) {
  if (h < 1 || h > c) throw std::invalid_argument("avg_decomposition_46: h outside 1..c");
  const AplusInstance inst(c, b, k, 1, q, w);
  const CusumSubscript unconstrained{c};
  Rational plus_num = 0, plus_den = 0, minus_num = 0, minus_den = 0;
  for (int j = 1; j <= c; ++j) {
    const IndexSet J{j};
    const SubsetProfile prof = subset_profile(inst, J, unconstrained);
    const Rational weight = prof.wbar * prof.u_J;
    const Rational value = summed_cross_product_ratio(inst, J);
    if (j <= h) {
      plus_num += weight * value;
      plus_den += weight;
    } else {
      minus_num += weight * value;
      minus_den += weight;
    }
  }
  Decomposition46 out;
  const Rational total = plus_den + minus_den;
  out.overall = (plus_num + minus_num) / total;
  out.avg_plus = plus_num / plus_den;
  if (sgn(minus_den) > 0) out.avg_minus = Rational(minus_num / minus_den);
  out.weight_plus = plus_den / total;
  out.weight_minus = minus_den / total;
  out.rhs = rhs_constant(c, b, k, 1);
  return out;
}

}  // namespace cusumlab
