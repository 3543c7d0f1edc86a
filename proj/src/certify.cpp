#include "cusumlab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "cusumlab/sampling.hpp"

namespace cusumlab {

namespace {

Rational esf(const OddsVector<Rational>& w, const IndexSet& subset, int degree) {
  return elementary_symmetric_over<Rational>(w.span(), subset, degree);
}

std::vector<IndexSet> eliminated_sets(int c, int b, int k) { return subsets_of_size(IndexSet::range(b + 1, c), k); }

IndexSet set_of_mask(std::uint64_t mask) {
  std::vector<int> out;
  for (int v = 1; mask != 0; ++v, mask >>= 1) {
    if (mask & 1U) out.push_back(v);
  }
  return IndexSet(std::move(out));
}

/// T_J: sum over the orderings of J lying below h of x_{j_1} ... x_{j_q}, keyed by J's bitmask.
std::map<std::uint64_t, SparsePolynomial> lead_polynomials(const Scenario& scn, const CusumSubscript& h) {
  std::map<std::uint64_t, SparsePolynomial> out;
  std::function<void(int, std::uint64_t, SparsePolynomial::Key)> walk = [&](int alpha, std::uint64_t used,
                                                                         SparsePolynomial::Key lead) {
    if (alpha == scn.p) {
      auto it = out.try_emplace(used, SparsePolynomial(scn.c)).first;
      it->second.add_term(lead, 1);
      return;
    }
    for (int v = 1; v <= h[alpha + 1]; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << (v - 1);
      if (used & bit) continue;
      const SparsePolynomial::Key next = alpha < scn.q ? lead + (SparsePolynomial::Key{1} << (8 * (v - 1))) : lead;
      walk(alpha + 1, used | bit, next);
    }
  };
  walk(0, 0, 0);
  return out;
}

std::string status_text(const CertificateResult& result) {
  if (result.capped) return "cap";
  if (result.identically_zero) return "identically-zero";
  return to_string(result.status);
}

}  // namespace

Rational CusumNumerator::denominator_at(const OddsVector<Rational>& w) const {
  const IndexSet all = IndexSet::range(1, c);
  Rational out = prefactor * esf(w, all, b);
  for (const IndexSet& K : eliminated_sets(c, b, k)) out *= esf(w, all.set_minus(K), b);
  return out;
}

Rational CusumNumerator::cusum_at(const OddsVector<Rational>& w) const {
  return numerator.evaluate(w.span()) / denominator_at(w);
}

CusumNumerator cusum_numerator_polynomial(const Scenario& scn, const CusumSubscript& h, std::size_t cap) {
  scn.validate();
  const auto [c, b, k, p, q, superscript] = scn;
  if (c > SparsePolynomial::kMaxVars) throw std::invalid_argument("numerator expansion supports c <= 8");
  if (h.p() != p) throw std::invalid_argument("numerator: |h| != p");
  h.validate(c);

  CusumNumerator out;
  out.c = c;
  out.b = b;
  out.k = k;
  out.prefactor = ratio(factorial(p) * binomial(b, q) * binomial(c - b - k, p - q), binomial(p, q));
  out.numerator = SparsePolynomial(c, cap);
  const auto leads = lead_polynomials(scn, h);
  if (leads.empty()) return out;

  const IndexSet all = IndexSet::range(1, c);
  const std::vector<IndexSet> Ks = eliminated_sets(c, b, k);
  auto e = [&](const IndexSet& subset, int degree) {
    SparsePolynomial poly = elementary_symmetric_polynomial(c, subset, degree);
    poly.set_cap(cap);
    return poly;
  };

  // Small factors first: per-K sums over J and the unrestricted term.
  SparsePolynomial full_sum(c, cap);
  std::vector<SparsePolynomial> per_k(Ks.size(), SparsePolynomial(c, cap));
  for (const auto& [mask, lead] : leads) {
    const IndexSet J = set_of_mask(mask);
    full_sum += lead * e(all.set_minus(J), b - q);
    for (std::size_t t = 0; t < Ks.size(); ++t) {
      if (!J.disjoint(Ks[t])) continue;
      per_k[t] += lead * e(all.set_minus(Ks[t]).set_minus(J), b - q);
    }
  }

  std::vector<SparsePolynomial> denominators;
  for (const IndexSet& K : Ks) denominators.push_back(e(all.set_minus(K), b));
  const std::size_t n = denominators.size();
  // prefix[t] = prod_{s<t}, suffix[t] = prod_{s>=t}
  std::vector<SparsePolynomial> prefix(n + 1, SparsePolynomial::constant(c, 1));
  std::vector<SparsePolynomial> suffix(n + 1, SparsePolynomial::constant(c, 1));
  for (auto& poly : prefix) poly.set_cap(cap);
  for (auto& poly : suffix) poly.set_cap(cap);
  for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = prefix[t] * denominators[t];
  for (std::size_t t = n; t-- > 0;) suffix[t] = suffix[t + 1] * denominators[t];

  const SparsePolynomial e_all = e(all, b);
  SparsePolynomial total(c, cap);
  for (std::size_t t = 0; t < n; ++t) {
    if (per_k[t].is_zero()) continue;
    total += (prefix[t] * suffix[t + 1]) * (e_all * per_k[t]);
  }
  total -= prefix[n] * full_sum.scaled(binomial(c - b - p + q, k));
  out.numerator = std::move(total);
  return out;
}

std::string to_string(CertificateStatus status) {
  return status == CertificateStatus::certified ? "certified" : "inconclusive";
}

CertificateResult certify_positivity(const Scenario& scn, const CusumSubscript& h, const CertifyOptions& options) {
  CertificateResult result;
  try {
    const CusumNumerator num = cusum_numerator_polynomial(scn, h, options.cap);
    if (num.numerator.is_zero()) {
      result.identically_zero = true;
    } else {
      const SparsePolynomial shifted = difference_substitution(num.numerator);
      result.term_count = shifted.size();
      result.negative_coefficient_count = shifted.negative_count();
      result.constant_term_sign = sgn(shifted.constant_term());
      if (result.negative_coefficient_count == 0 && result.constant_term_sign > 0) {
        result.status = CertificateStatus::certified;
      }
    }
  } catch (const ExpansionCapExceeded&) {
    result.capped = true;
  }
  if (result.status == CertificateStatus::inconclusive && options.fallback_samples > 0) {
    result.fallback = numeric_sweep(scn, h, options.fallback_samples, options.seed);
  }
  return result;
}

VerificationRecord certificate_record(const Scenario& scn, const CusumSubscript& h, const CertificateResult& result) {
  VerificationRecord rec;
  rec.command = "certify";
  rec.scenario = scenario_fields(scn, h);
  rec.quantity = "certificate_status";
  rec.value = status_text(result);
  if (result.status == CertificateStatus::certified) {
    rec.verdict = Verdict::pass;
  } else if (result.capped) {
    rec.verdict = Verdict::cap;
  } else if (result.identically_zero) {
    rec.verdict = Verdict::identically_zero;
  } else if (result.fallback && result.fallback->verdict == Verdict::fail) {
    rec.verdict = Verdict::fail;
  } else {
    rec.verdict = Verdict::report;
  }
  rec.detail["constant_term_sign"] = std::to_string(result.constant_term_sign);
  rec.detail["negative_coefficients"] = std::to_string(result.negative_coefficient_count);
  rec.detail["terms"] = std::to_string(result.term_count);
  if (result.fallback) {
    rec.seed = result.fallback->seed;
    rec.detail["fallback_verdict"] = to_string(result.fallback->verdict);
    rec.detail["fallback_min"] = result.fallback->value;
  }
  return rec;
}

VerificationRecord numeric_sweep(const Scenario& scn, const CusumSubscript& h, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("numeric_sweep needs samples >= 1");
  std::vector<int> keys{scn.c, scn.b, scn.k, scn.p, scn.q};
  keys.insert(keys.end(), h.entries().begin(), h.entries().end());
  std::mt19937_64 rng = work_rng(seed, keys);
  std::optional<Rational> minimum;
  std::optional<OddsVector<Rational>> argmin;
  bool all_zero = true;
  bool all_positive = true;
  for (const auto& w : sample_odds(scn.c, samples, rng)) {
    const Rational value = AplusEvaluator(AplusInstance(scn, w)).cusum(h);
    if (sgn(value) != 0) all_zero = false;
    if (sgn(value) <= 0) all_positive = false;
    if (!minimum || value < *minimum) {
      minimum = value;
      argmin = w;
    }
  }
  VerificationRecord rec;
  rec.command = "numeric_sweep";
  rec.scenario = scenario_fields(scn, h);
  rec.w = argmin->entries();
  rec.quantity = "min_cusum_aplus";
  rec.value = format_value(*minimum);
  rec.seed = seed;
  rec.verdict = all_zero ? Verdict::identically_zero : (all_positive ? Verdict::pass : Verdict::fail);
  rec.detail["samples"] = std::to_string(samples);
  return rec;
}

VerificationRecord theorem31_path_check(const Scenario& scn, const CusumSubscript& h, const OddsVector<Rational>& w,
                                        int grid) {
  if (grid < 8) throw std::invalid_argument("theorem31_path_check needs grid >= 8");
  if (!is_contributing(h)) throw std::invalid_argument("theorem31_path_check needs a contributing h");
  scn.validate();
  const Rational r(grid);
  std::vector<Rational> values;
  // x -> 0+: the a+ limit at exponent r equals the r = 1 limit at odds w^r
  std::vector<Rational> powered;
  for (const Rational& v : w.entries()) powered.push_back(ScalarOps<Rational>::power(v, r));
  values.push_back(AplusEvaluator(AplusInstance(scn, OddsVector<Rational>(std::move(powered)))).cusum(h));
  for (int m = 1; m <= grid; ++m) {
    const auto a = Configuration<Rational>::path(scn.c, scn.b, scn.k, r, Rational(m));
    values.push_back(DirectEvaluator<Rational>(a, w).cusum(scn.superscript, h));
  }
  const bool positive = std::all_of(values.begin(), values.end(), [](const Rational& v) { return sgn(v) > 0; });
  double scale = 0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v.get_d()));
  bool monotone = true;
  bool constant = true;
  for (std::size_t t = 1; t < values.size(); ++t) {
    if (values[t].get_d() < values[t - 1].get_d() - 1e-9 * scale) monotone = false;
    if (values[t] != values[t - 1]) constant = false;
  }
  VerificationRecord rec;
  rec.command = "verify theorem31";
  rec.scenario = scenario_fields(scn, h);
  rec.w = w.entries();
  rec.quantity = "path_min_G";
  rec.value = format_value(*std::min_element(values.begin(), values.end()));
  rec.verdict = positive && monotone ? Verdict::pass : Verdict::fail;
  rec.detail["G_at_r"] = format_value(values.back());
  rec.detail["G_at_0plus"] = format_value(values.front());
  rec.detail["grid"] = std::to_string(grid);
  rec.detail["shape"] = !monotone ? "not-monotone" : (constant ? "constant" : "nondecreasing");
  return rec;
}

}  // namespace cusumlab
