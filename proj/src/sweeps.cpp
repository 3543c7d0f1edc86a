#include "cusumlab/sweeps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "cusumlab/aplus.hpp"
#include "cusumlab/certify.hpp"
#include "cusumlab/lemmas.hpp"
#include "cusumlab/parallel.hpp"
#include "cusumlab/sampling.hpp"

namespace cusumlab {

namespace {

std::string count_text(std::size_t n) { return format_value(Rational(static_cast<long>(n))); }

std::vector<VerificationRecord> flatten(std::vector<std::vector<VerificationRecord>> nested) {
  std::vector<VerificationRecord> out;
  for (auto& part : nested) {
    for (auto& rec : part) out.push_back(std::move(rec));
  }
  sort_records(out);
  return out;
}

std::mt19937_64 scenario_rng(std::uint64_t seed, const Scenario& scn, int salt) {
  return work_rng(seed, {scn.c, scn.b, scn.k, scn.p, scn.q, salt});
}

struct Triple {
  int c, b, k;
};

std::vector<Triple> triples(int c_max) {
  std::vector<Triple> out;
  for (int c = 3; c <= c_max; ++c) {
    for (int b = 1; b < c; ++b) {
      for (int k = 1; k <= c - b - 1; ++k) out.push_back({c, b, k});
    }
  }
  return out;
}

ScenarioFields triple_fields(const Triple& t) {
  ScenarioFields f;
  f.c = t.c;
  f.b = t.b;
  f.k = t.k;
  return f;
}

/// Weighted-average criterion for every h from one set of per-subset sums.
class InequalityChecker {
 public:
  explicit InequalityChecker(const AplusInstance& inst) : inst_(inst) {
    for_each_subset(IndexSet::range(1, inst.c), inst.p, [&](const IndexSet& J) {
      std::uint64_t mask = 0;
      for (int v : J) mask |= std::uint64_t{1} << (v - 1);
      const SubsetProfile prof = subset_profile(inst, J, CusumSubscript::constant(inst.p, inst.c));
      const Rational summed = prof.k_J == 0 ? Rational(0) : summed_cross_product_ratio(inst, J);
      parts_.emplace(mask, std::make_pair(prof.u_J, summed));
    });
    rhs_ = rhs_constant(inst.c, inst.b, inst.k, inst.p);
  }

  /// sign(weighted average - rhs)
  int relation(const CusumSubscript& h) const {
    std::map<std::uint64_t, Rational> lead_sums;
    std::function<void(int, std::uint64_t, const Rational&)> walk = [&](int alpha, std::uint64_t used,
                                                                         const Rational& lead) {
      if (alpha == inst_.p) {
        lead_sums[used] += lead;
        return;
      }
      for (int v = 1; v <= h[alpha + 1]; ++v) {
        const std::uint64_t bit = std::uint64_t{1} << (v - 1);
        if (used & bit) continue;
        walk(alpha + 1, used | bit, alpha < inst_.q ? Rational(lead * inst_.w[v]) : lead);
      }
    };
    walk(0, 0, Rational(1));
    Rational num = 0, den = 0;
    for (const auto& [mask, lead] : lead_sums) {
      const auto& [u, summed] = parts_.at(mask);
      den += lead * u;
      num += lead * u * summed;
    }
    return sgn(num - rhs_ * den);
  }

 private:
  const AplusInstance& inst_;
  std::map<std::uint64_t, std::pair<Rational, Rational>> parts_;
  Rational rhs_;
};

}  // namespace

bool any_failure(const std::vector<VerificationRecord>& records) {
  return std::any_of(records.begin(), records.end(), [](const auto& r) { return r.verdict == Verdict::fail; });
}

std::vector<VerificationRecord> oracle_sweep(int c_max, int w_samples, std::uint64_t seed) {
  const std::vector<Scenario> keys = scenario_keys(c_max);
  return flatten(parallel_map(keys.size(), [&](std::size_t idx) {
    const Scenario& scn = keys[idx];
    auto rng = scenario_rng(seed, scn, 0);
    std::size_t compared = 0, mismatches = 0;
    const auto subscripts = contributing_subscripts(scn.p, scn.c - 1);
    for (const auto& w : sample_odds(scn.c, w_samples, rng)) {
      const auto engine = AplusEvaluator(AplusInstance(scn, w)).cusum_table();
      const auto direct = DirectEvaluator<Rational>(Configuration<Rational>::aplus(scn.c, scn.b, scn.k), w)
                              .cusum_table(scn.superscript);
      for (const auto& h : subscripts) {
        ++compared;
        if (engine.at(h) != direct.at(h)) ++mismatches;
      }
    }
    VerificationRecord rec;
    rec.command = "oracle";
    rec.scenario = scenario_fields(scn);
    rec.quantity = "engine_direct_mismatches";
    rec.value = count_text(mismatches);
    rec.verdict = mismatches == 0 ? Verdict::pass : Verdict::fail;
    rec.seed = seed;
    rec.detail["compared"] = std::to_string(compared);
    return std::vector<VerificationRecord>{rec};
  }));
}

std::vector<VerificationRecord> lemma21_sweep(int c_max, int w_samples, std::uint64_t seed, bool check_inequality) {
  const std::vector<Scenario> keys = scenario_keys(c_max);
  return flatten(parallel_map(keys.size(), [&](std::size_t idx) {
    const Scenario& scn = keys[idx];
    auto rng = scenario_rng(seed, scn, 1);
    const auto subscripts = contributing_subscripts(scn.p, scn.c - 1);
    std::vector<std::optional<Rational>> minimum(subscripts.size());
    std::vector<std::optional<OddsVector<Rational>>> argmin(subscripts.size());
    std::vector<std::size_t> disagreements(subscripts.size(), 0);
    for (const auto& w : sample_odds(scn.c, w_samples, rng)) {
      const AplusInstance inst(scn, w);
      const auto table = AplusEvaluator(inst).cusum_table();
      std::optional<InequalityChecker> checker;
      if (check_inequality) checker.emplace(inst);
      for (std::size_t t = 0; t < subscripts.size(); ++t) {
        const Rational& v = table.at(subscripts[t]);
        if (!minimum[t] || v < *minimum[t]) {
          minimum[t] = v;
          argmin[t] = w;
        }
        if (checker && checker->relation(subscripts[t]) != sgn(v)) ++disagreements[t];
      }
    }
    std::vector<VerificationRecord> out;
    for (std::size_t t = 0; t < subscripts.size(); ++t) {
      VerificationRecord rec;
      rec.command = check_inequality ? "verify lemma21" : "sweep";
      rec.scenario = scenario_fields(scn, subscripts[t]);
      rec.w = argmin[t]->entries();
      rec.quantity = "min_cusum_aplus";
      rec.value = format_value(*minimum[t]);
      rec.seed = seed;
      const bool ok = sgn(*minimum[t]) > 0 && disagreements[t] == 0;
      rec.verdict = ok ? Verdict::pass : Verdict::fail;
      rec.detail["samples"] = std::to_string(w_samples);
      if (check_inequality) rec.detail["inequality44_disagreements"] = std::to_string(disagreements[t]);
      out.push_back(std::move(rec));
    }
    return out;
  }));
}

std::vector<VerificationRecord> lemma41_sweep(int c_max, int hypergeometric_c_max) {
  struct Item {
    int c, b, k, p;
  };
  std::vector<Item> items;
  for (const Triple& t : triples(c_max)) {
    for (int p = 1; p <= t.c - t.k; ++p) items.push_back({t.c, t.b, t.k, p});
  }
  auto margins = parallel_map(items.size(), [&](std::size_t idx) {
    const auto [c, b, k, p] = items[idx];
    const Rational rhs = rhs_constant(c, b, k, p);
    std::optional<Rational> minimum;
    CusumSubscript argmin;
    std::size_t violations = 0, model_mismatches = 0;
    for (const auto& h : contributing_subscripts(p, c - 1)) {
      const Rational avg = lemma41_average(c, b, k, p, h);
      const QpDistribution dist = qp_distribution(h, b, c, p);
      Rational expected = 0;
      for (const auto& [q, mass] : dist.pmf) expected += mass * Rational(binomial(c - b - p + q, k));
      if (expected != avg) ++model_mismatches;
      const Rational margin = avg - rhs;
      if (sgn(margin) <= 0) ++violations;
      if (!minimum || margin < *minimum) {
        minimum = margin;
        argmin = h;
      }
    }
    const CusumSubscript full = CusumSubscript::constant(p, c);
    const Rational full_margin = lemma41_average(c, b, k, p, full) - rhs;

    ScenarioFields f;
    f.c = c;
    f.b = b;
    f.k = k;
    f.p = p;
    std::vector<VerificationRecord> out;
    VerificationRecord strict;
    strict.command = "verify lemma41";
    strict.scenario = f;
    strict.scenario.h = argmin.entries();
    strict.quantity = "min_equal_odds_margin";
    strict.value = format_value(*minimum);
    strict.verdict = violations == 0 && model_mismatches == 0 ? Verdict::pass : Verdict::fail;
    strict.detail["rhs_constant"] = format_value(rhs);
    strict.detail["violations"] = std::to_string(violations);
    strict.detail["model_mismatches"] = std::to_string(model_mismatches);
    out.push_back(std::move(strict));
    VerificationRecord equality;
    equality.command = "verify lemma41";
    equality.scenario = f;
    equality.scenario.h = full.entries();
    equality.quantity = "unconstrained_margin";
    equality.value = format_value(full_margin);
    equality.verdict = sgn(full_margin) == 0 ? Verdict::pass : Verdict::fail;
    out.push_back(std::move(equality));
    return out;
  });

  struct Pair {
    int c, b, p;
  };
  std::vector<Pair> pairs;
  for (int c = 3; c <= std::max(c_max, hypergeometric_c_max); ++c) {
    for (int b = 1; b < c; ++b) {
      for (int p = 1; p <= c - 1; ++p) pairs.push_back({c, b, p});
    }
  }
  auto laws = parallel_map(pairs.size(), [&](std::size_t idx) {
    const auto [c, b, p] = pairs[idx];
    ScenarioFields f;
    f.c = c;
    f.b = b;
    f.p = p;
    std::vector<VerificationRecord> out;
    if (c <= hypergeometric_c_max) {
      const QpDistribution dist = qp_distribution(CusumSubscript::constant(p, c), b, c, p);
      bool equal = true;
      Rational mass = 0;
      for (int q = 0; q <= p; ++q) {
        mass += dist.prob(q);
        if (dist.prob(q) != hypergeometric_pmf(b, p, c, q)) equal = false;
      }
      VerificationRecord rec;
      rec.command = "verify lemma41";
      rec.scenario = f;
      rec.quantity = "qp_hypergeometric_match";
      rec.value = format_value(mass);
      rec.verdict = equal && mass == 1 ? Verdict::pass : Verdict::fail;
      out.push_back(std::move(rec));
    }
    if (c <= c_max) {
      std::size_t checked = 0, failed = 0, equal_everywhere = 0;
      for (const auto& h : contributing_subscripts(p, c - 1)) {
        const VerificationRecord dom = check_stochastic_dominance(h, b, c, p);
        ++checked;
        if (dom.verdict == Verdict::fail) ++failed;
        if (dom.verdict == Verdict::report) ++equal_everywhere;
      }
      VerificationRecord rec;
      rec.command = "verify lemma41";
      rec.scenario = f;
      rec.quantity = "dominance_failures";
      rec.value = count_text(failed);
      rec.verdict = failed > 0 ? Verdict::fail : (equal_everywhere > 0 ? Verdict::report : Verdict::pass);
      rec.detail["checked"] = std::to_string(checked);
      rec.detail["all_equal"] = std::to_string(equal_everywhere);
      out.push_back(std::move(rec));
    }
    return out;
  });
  for (auto& part : laws) margins.push_back(std::move(part));
  return flatten(std::move(margins));
}

std::vector<VerificationRecord> lemma42_sweep(int c_max, int w_samples, std::uint64_t seed) {
  struct Item {
    Triple t;
    int q;
  };
  std::vector<Item> items;
  for (const Triple& t : triples(c_max)) {
    for (int q = 0; q <= 1; ++q) items.push_back({t, q});
  }
  return flatten(parallel_map(items.size(), [&](std::size_t idx) {
    const auto& [t, q] = items[idx];
    auto rng = work_rng(seed, {t.c, t.b, t.k, q, 42});
    std::size_t violations = 0, nonzero_sums = 0;
    for (const auto& w : sample_odds(t.c, w_samples, rng)) {
      const SignPattern s = single_index_signs(t.c, t.b, t.k, q, w);
      if (!s.monotone(t.b)) ++violations;
      Rational total = 0;
      for (const auto& v : s.values) total += v;
      if (sgn(total) != 0) ++nonzero_sums;
    }
    VerificationRecord rec;
    rec.command = "verify lemma42";
    rec.scenario = triple_fields(t);
    rec.scenario.p = 1;
    rec.scenario.q = q;
    rec.quantity = "sign_pattern_violations";
    rec.value = count_text(violations);
    rec.verdict = violations == 0 && nonzero_sums == 0 ? Verdict::pass : Verdict::fail;
    rec.seed = seed;
    rec.detail["samples"] = std::to_string(w_samples);
    rec.detail["nonzero_totals"] = std::to_string(nonzero_sums);
    return std::vector<VerificationRecord>{rec};
  }));
}

std::vector<VerificationRecord> lemma43_sweep(int c_max, int w_samples, std::uint64_t seed) {
  const std::vector<Triple> ts = triples(c_max);
  return flatten(parallel_map(ts.size(), [&](std::size_t idx) {
    const Triple& t = ts[idx];
    auto rng = work_rng(seed, {t.c, t.b, t.k, 43});
    const auto draws = sample_odds(t.c, w_samples, rng);
    std::vector<VerificationRecord> out;
    for (int j = 1; j <= t.c; ++j) {
      std::optional<Rational> extreme;
      std::size_t failures = 0;
      std::string bound;
      for (const auto& w : draws) {
        const VerificationRecord rec = check_lemma43_bounds(t.c, t.b, t.k, j, w);
        if (rec.verdict == Verdict::fail) ++failures;
        const Rational r = parse_rational(rec.value);
        if (!extreme || (j <= t.b ? r < *extreme : r > *extreme)) extreme = r;
        bound = rec.detail.begin()->first + "=" + rec.detail.begin()->second;
      }
      VerificationRecord rec;
      rec.command = "verify lemma43";
      rec.scenario = triple_fields(t);
      rec.scenario.p = 1;
      rec.scenario.q = j <= t.b ? 0 : 1;
      rec.scenario.h = std::vector<int>{j};
      rec.quantity = j <= t.b ? "min_avg_cross_product_ratio" : "max_avg_cross_product_ratio";
      rec.value = format_value(*extreme);
      rec.verdict = failures == 0 ? Verdict::pass : Verdict::fail;
      rec.seed = seed;
      rec.detail["bound"] = bound;
      rec.detail["violations"] = std::to_string(failures);
      out.push_back(std::move(rec));
    }
    for (int q = 0; q <= 1; ++q) {
      std::size_t mismatches = 0, checked = 0;
      for (const auto& w : draws) {
        for (int h = 1; h <= t.c; ++h) {
          ++checked;
          if (!avg_decomposition_46(t.c, t.b, t.k, q, h, w).identity_holds()) ++mismatches;
        }
      }
      VerificationRecord rec;
      rec.command = "verify lemma43";
      rec.scenario = triple_fields(t);
      rec.scenario.p = 1;
      rec.scenario.q = q;
      rec.quantity = "split_average_identity_mismatches";
      rec.value = count_text(mismatches);
      rec.verdict = mismatches == 0 ? Verdict::pass : Verdict::fail;
      rec.seed = seed;
      rec.detail["checked"] = std::to_string(checked);
      out.push_back(std::move(rec));
    }
    return out;
  }));
}

std::vector<VerificationRecord> theorem31_sweep(int c_max, int samples, int path_samples, std::uint64_t seed) {
  const std::vector<Triple> ts = triples(c_max);
  auto random_part = parallel_map(ts.size(), [&](std::size_t idx) {
    const Triple& t = ts[idx];
    auto rng = work_rng(seed, {t.c, t.b, t.k, 31});
    const Scenario full = Scenario::full(t.c, t.b, t.k);
    const auto subscripts = contributing_subscripts(full.p, t.c - 1);
    std::optional<Rational> minimum;
    std::vector<Rational> worst_w;
    std::vector<int> worst_h;
    std::size_t violations = 0, checked = 0;
    for (int d = 0; d < samples; ++d) {
      const auto a = random_configuration(t.c, t.b, t.k, rng);
      const auto w = d == 0 ? OddsVector<Rational>::ones(t.c) : random_odds(t.c, rng);
      const auto table = DirectEvaluator<Rational>(a, w).cusum_table(full.superscript);
      for (const auto& h : subscripts) {
        ++checked;
        const Rational& v = table.at(h);
        if (sgn(v) <= 0) ++violations;
        if (!minimum || v < *minimum) {
          minimum = v;
          worst_w = w.entries();
          worst_h = h.entries();
        }
      }
    }
    VerificationRecord rec;
    rec.command = "verify theorem31";
    rec.scenario = scenario_fields(full);
    rec.scenario.h = worst_h;
    rec.w = worst_w;
    rec.quantity = "min_cusum_random_configuration";
    rec.value = format_value(*minimum);
    rec.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
    rec.seed = seed;
    rec.detail["checked"] = std::to_string(checked);
    rec.detail["samples"] = std::to_string(samples);
    return std::vector<VerificationRecord>{rec};
  });

  const auto pairs = enumerate_scenarios(c_max);
  auto path_part = parallel_map(pairs.size(), [&](std::size_t idx) {
    const auto& [scn, h] = pairs[idx];
    std::vector<int> keys{scn.c, scn.b, scn.k, scn.p, scn.q, 32};
    keys.insert(keys.end(), h.entries().begin(), h.entries().end());
    auto rng = work_rng(seed, keys);
    std::optional<VerificationRecord> worst;
    std::size_t failures = 0;
    std::map<std::string, int> shapes;
    for (const auto& w : sample_odds(scn.c, path_samples, rng)) {
      VerificationRecord rec = theorem31_path_check(scn, h, w);
      if (rec.verdict == Verdict::fail) ++failures;
      ++shapes[rec.detail["shape"]];
      if (!worst || parse_rational(rec.value) < parse_rational(worst->value)) worst = std::move(rec);
    }
    worst->verdict = failures == 0 ? Verdict::pass : Verdict::fail;
    worst->seed = seed;
    for (const auto& [shape, n] : shapes) worst->detail["paths_" + shape] = std::to_string(n);
    return std::vector<VerificationRecord>{*worst};
  });
  for (auto& part : path_part) random_part.push_back(std::move(part));
  return flatten(std::move(random_part));
}

std::vector<VerificationRecord> certify_sweep(int c_max, int samples, std::uint64_t seed) {
  const auto pairs = enumerate_scenarios(c_max);
  return flatten(parallel_map(pairs.size(), [&](std::size_t idx) {
    const auto& [scn, h] = pairs[idx];
    CertifyOptions options;
    options.fallback_samples = samples;
    options.seed = seed;
    const CertificateResult result = certify_positivity(scn, h, options);
    VerificationRecord rec = certificate_record(scn, h, result);
    const Rational margin = lemma41_average(scn.c, scn.b, scn.k, scn.p, h) - rhs_constant(scn.c, scn.b, scn.k, scn.p);
    rec.detail["equal_odds_margin_sign"] = std::to_string(sgn(margin));
    bool ok = rec.verdict != Verdict::fail;
    if (!result.identically_zero && !result.capped && result.constant_term_sign != sgn(margin)) ok = false;
    if (result.status == CertificateStatus::certified) {
      const VerificationRecord numeric = numeric_sweep(scn, h, samples, seed);
      rec.detail["numeric_verdict"] = to_string(numeric.verdict);
      rec.detail["numeric_min"] = numeric.value;
      if (numeric.verdict != Verdict::pass) ok = false;
    }
    if (!ok) rec.verdict = Verdict::fail;
    rec.seed = seed;
    return std::vector<VerificationRecord>{rec};
  }));
}

}  // namespace cusumlab
