#include "cusumlab/aplus.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cusumlab {

namespace {

std::uint64_t mask_of(const std::vector<int>& j) {
  std::uint64_t m = 0;
  for (int v : j) m |= std::uint64_t{1} << (v - 1);
  return m;
}

IndexSet set_of_mask(std::uint64_t mask) {
  std::vector<int> out;
  for (int v = 1; mask != 0; ++v, mask >>= 1) {
    if (mask & 1U) out.push_back(v);
  }
  return IndexSet(std::move(out));
}

Rational esf(const OddsVector<Rational>& w, const IndexSet& subset, int degree) {
  return elementary_symmetric_over<Rational>(w.span(), subset, degree);
}

}  // namespace

AplusInstance::AplusInstance(int c_, int b_, int k_, int p_, int q_, OddsVector<Rational> w_)
    : c(c_), b(b_), k(k_), p(p_), q(q_), w(std::move(w_)) {
  validate();
}

AplusInstance::AplusInstance(const Scenario& scn, OddsVector<Rational> w_)
    : AplusInstance(scn.c, scn.b, scn.k, scn.p, scn.q, std::move(w_)) {}

void AplusInstance::validate() const {
  if (c < 3 || c > 63) throw std::invalid_argument("a+ instance needs 3 <= c <= 63");
  if (b < 1 || b >= c) throw std::invalid_argument("a+ instance needs 1 <= b < c");
  if (k < 1 || k > c - b - 1) throw std::invalid_argument("a+ instance needs 1 <= k <= c-b-1");
  if (p < 1 || p > c - k) throw std::invalid_argument("a+ instance needs 1 <= p <= c-k");
  if (q < q_lower(c, b, k, p) || q > q_upper(b, p)) {
    throw std::invalid_argument("q inconsistent with instance ranges");
  }
  if (w.c() != c) throw std::invalid_argument("odds vector length differs from c");
}

Integer k_J(int c, int b, int k, int p, const IndexSet& J) {
  const int q_prime = static_cast<int>(std::count_if(J.begin(), J.end(), [b](int j) { return j <= b; }));
  return binomial(c - b - p + q_prime, k);
}

// ---------------------------------------------------------------------------

AplusEvaluator::AplusEvaluator(AplusInstance inst) : inst_(std::move(inst)) {
  inst_.validate();
  const auto& [c, b, k, p, q, w] = inst_;
  prefactor_ = ratio(factorial(p) * binomial(b, q) * binomial(c - b - k, p - q), binomial(p, q));
}

Rational AplusEvaluator::bracket(const IndexSet& J) const {
  const auto& [c, b, k, p, q, w] = inst_;
  if (J.size() != p) throw std::invalid_argument("bracket: |J| != p");
  const IndexSet all = IndexSet::range(1, c);
  const IndexSet eligible = IndexSet::range(b + 1, c).set_minus(J);
  Rational left = 0;
  for_each_subset(eligible, k, [&](const IndexSet& K) {
    const IndexSet rest = all.set_minus(K);
    left += esf(w, rest.set_minus(J), b - q) / esf(w, rest, b);
  });
  const Rational right = esf(w, all.set_minus(J), b - q) / esf(w, all, b) * Rational(binomial(c - b - p + q, k));
  return left - right;
}

const Rational& AplusEvaluator::base(std::uint64_t mask) const {
  auto it = cache_.find(mask);
  if (it == cache_.end()) it = cache_.emplace(mask, bracket(set_of_mask(mask)) / prefactor_).first;
  return it->second;
}

Rational AplusEvaluator::lead_product(const std::vector<int>& j) const {
  Rational out = 1;
  for (int alpha = 0; alpha < inst_.q; ++alpha) out *= inst_.w[j[alpha]];
  return out;
}

Rational AplusEvaluator::component(const CusumSubscript& j) const {
  if (j.p() != inst_.p) throw std::invalid_argument("component: |j| != p");
  j.validate(inst_.c);
  if (j.has_repeat()) return 0;
  return lead_product(j.entries()) * base(mask_of(j.entries()));
}

Rational AplusEvaluator::cusum(const CusumSubscript& h) const {
  if (h.p() != inst_.p) throw std::invalid_argument("cusum: |h| != p");
  h.validate(inst_.c);
  Rational total = 0;
  std::vector<int> j(static_cast<std::size_t>(inst_.p));
  std::function<void(int, std::uint64_t, const Rational&)> walk = [&](int alpha, std::uint64_t used,
                                                                        const Rational& lead) {
    if (alpha == inst_.p) {
      total += lead * base(used);
      return;
    }
    for (int v = 1; v <= h[alpha + 1]; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << (v - 1);
      if (used & bit) continue;
      j[alpha] = v;
      if (alpha < inst_.q) {
        walk(alpha + 1, used | bit, Rational(lead * inst_.w[v]));
      } else {
        walk(alpha + 1, used | bit, lead);
      }
    }
  };
  walk(0, 0, Rational(1));
  return total;
}

CusumTable<Rational> AplusEvaluator::cusum_table() const {
  const int c = inst_.c;
  const int p = inst_.p;
  std::size_t total = 1;
  for (int alpha = 0; alpha < p; ++alpha) total *= static_cast<std::size_t>(c);
  std::vector<Rational> mass(total, Rational(0));
  std::vector<int> j(static_cast<std::size_t>(p), 1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    std::uint64_t used = 0;
    bool distinct = true;
    for (int alpha = 0; alpha < p; ++alpha) {
      j[alpha] = static_cast<int>(rest % static_cast<std::size_t>(c)) + 1;
      rest /= static_cast<std::size_t>(c);
      const std::uint64_t bit = std::uint64_t{1} << (j[alpha] - 1);
      if (used & bit) distinct = false;
      used |= bit;
    }
    if (distinct) mass[idx] = lead_product(j) * base(used);
  }
  return summed_area<Rational>(c, p, std::move(mass));
}

Rational component_at_aplus(const AplusInstance& inst, const CusumSubscript& j) {
  return AplusEvaluator(inst).component(j);
}

Rational cusum_at_aplus(const AplusInstance& inst, const CusumSubscript& h) { return AplusEvaluator(inst).cusum(h); }

// ---------------------------------------------------------------------------

Rational cross_product_ratio(const AplusInstance& inst, const IndexSet& J, const IndexSet& K) {
  const auto& [c, b, k, p, q, w] = inst;
  if (J.size() != p) throw std::invalid_argument("cross_product_ratio: |J| != p");
  if (K.size() != k) throw std::invalid_argument("cross_product_ratio: |K| != k");
  if (!K.empty() && K.elements().front() <= b) throw std::invalid_argument("cross_product_ratio: K must avoid B");
  if (!J.disjoint(K)) throw std::invalid_argument("cross_product_ratio: J and K intersect");
  const IndexSet all = IndexSet::range(1, c);
  const Rational top_left = esf(w, all.set_minus(J.set_union(K)), b - q) / Rational(binomial(c - k - p, b - q));
  const Rational top_right = esf(w, all, b) / Rational(binomial(c, b));
  const Rational bottom_left = esf(w, all.set_minus(J), b - q) / Rational(binomial(c - p, b - q));
  const Rational bottom_right = esf(w, all.set_minus(K), b) / Rational(binomial(c - k, b));
  return top_left * top_right / (bottom_left * bottom_right);
}

Rational summed_cross_product_ratio(const AplusInstance& inst, const IndexSet& J) {
  Rational total = 0;
  for_each_subset(IndexSet::range(inst.b + 1, inst.c).set_minus(J), inst.k,
                  [&](const IndexSet& K) { total += cross_product_ratio(inst, J, K); });
  return total;
}

Rational avg_cross_product_ratio(const AplusInstance& inst, const IndexSet& J) {
  const Integer count = k_J(inst.c, inst.b, inst.k, inst.p, J);
  if (count == 0) throw std::domain_error("avg_cross_product_ratio: no admissible K (k_J = 0)");
  return summed_cross_product_ratio(inst, J) / Rational(count);
}

Rational rhs_constant(int c, int b, int k, int p) {
  return ratio(binomial(c - b, k) * binomial(c - k, p), binomial(c, p));
}

Rational rhs_constant_alt(int c, int b, int k, int p) {
  return ratio(binomial(c - k, b) * binomial(c - p, k), binomial(c, b));
}

Rational rhs_constant_unsimplified(int c, int b, int k, int p, int q) {
  return ratio(binomial(c - b - p + q, k) * binomial(c - p, b - q) * binomial(c - k, b),
                  binomial(c - k - p, b - q) * binomial(c, b));
}

int orderings_count(const IndexSet& J, const CusumSubscript& h) {
  if (J.size() != h.p()) throw std::invalid_argument("orderings_count: |J| != |h|");
  std::vector<int> order = J.elements();
  int count = 0;
  do {
    bool below = true;
    for (int alpha = 1; alpha <= h.p() && below; ++alpha) below = order[alpha - 1] <= h[alpha];
    if (below) ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

SubsetProfile subset_profile(const AplusInstance& inst, const IndexSet& J, const CusumSubscript& h) {
  if (J.size() != inst.p || h.p() != inst.p) throw std::invalid_argument("subset_profile: dimension mismatch");
  SubsetProfile prof;
  prof.J = J;
  prof.q_prime = static_cast<int>(std::count_if(J.begin(), J.end(), [&](int j) { return j <= inst.b; }));
  prof.k_J = binomial(inst.c - inst.b - inst.p + prof.q_prime, inst.k);
  prof.u_J = esf(inst.w, IndexSet::range(1, inst.c).set_minus(J), inst.b - inst.q);
  std::vector<int> order = J.elements();
  Rational lead_sum = 0;
  do {
    bool below = true;
    for (int alpha = 1; alpha <= h.p() && below; ++alpha) below = order[alpha - 1] <= h[alpha];
    if (!below) continue;
    ++prof.f_J;
    Rational lead = 1;
    for (int alpha = 0; alpha < inst.q; ++alpha) lead *= inst.w[order[alpha]];
    lead_sum += lead;
  } while (std::next_permutation(order.begin(), order.end()));
  prof.wbar = prof.f_J > 0 ? Rational(lead_sum / prof.f_J) : Rational(0);
  return prof;
}

Rational weighted_average_44(const AplusInstance& inst, const CusumSubscript& h) {
  if (!is_contributing(h)) throw std::invalid_argument("weighted_average_44 needs a contributing h");
  h.validate(inst.c);
  Rational num = 0;
  Rational den = 0;
  for_each_subset(IndexSet::range(1, inst.c), inst.p, [&](const IndexSet& J) {
    const SubsetProfile prof = subset_profile(inst, J, h);
    if (prof.f_J == 0) return;
    const Rational weight = prof.f_J * prof.wbar * prof.u_J;
    den += weight;
    if (prof.k_J != 0) num += weight * summed_cross_product_ratio(inst, J);
  });
  return num / den;
}

VerificationRecord check_inequality_44(const AplusInstance& inst, const CusumSubscript& h) {
  const Rational lhs = weighted_average_44(inst, h);
  const Rational rhs = rhs_constant(inst.c, inst.b, inst.k, inst.p);
  const Rational cusum = cusum_at_aplus(inst, h);
  const int rel = sign(Rational(lhs - rhs));
  VerificationRecord rec;
  rec.command = "inequality44";
  rec.scenario = scenario_fields(Scenario::representative(inst.c, inst.b, inst.k, inst.p, inst.q), h);
  rec.w = inst.w.entries();
  rec.quantity = "weighted_average_44";
  rec.value = format_value(lhs);
  rec.verdict = rel == sign(cusum) ? Verdict::pass : Verdict::fail;
  rec.detail["rhs_constant"] = format_value(rhs);
  rec.detail["cusum_aplus"] = format_value(cusum);
  rec.detail["relation"] = rel > 0 ? "greater" : (rel == 0 ? "equal" : "less");
  return rec;
}

// ---------------------------------------------------------------------------

std::vector<CusumSubscript> contributing_subscripts(int p, int max_entry) {
  std::vector<CusumSubscript> out;
  if (p < 1 || max_entry < 1) return out;
  std::vector<int> h(static_cast<std::size_t>(p), 1);
  while (true) {
    CusumSubscript cand(h);
    if (is_contributing(cand)) out.push_back(std::move(cand));
    int t = p - 1;
    while (t >= 0 && h[t] == max_entry) h[t--] = 1;
    if (t < 0) break;
    ++h[t];
  }
  return out;
}

std::vector<Scenario> scenario_keys(int c_max) {
  if (c_max < 3) throw std::invalid_argument("scenario enumeration needs c_max >= 3");
  std::vector<Scenario> out;
  for (int c = 3; c <= c_max; ++c) {
    for (int b = 1; b <= c - 1; ++b) {
      for (int k = 1; k <= c - b - 1; ++k) {
        for (int p = 1; p <= c - k; ++p) {
          for (int q = q_lower(c, b, k, p); q <= q_upper(b, p); ++q) {
            out.push_back(Scenario::representative(c, b, k, p, q));
          }
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<Scenario, CusumSubscript>> enumerate_scenarios(int c_max) {
  std::vector<std::pair<Scenario, CusumSubscript>> out;
  for (const Scenario& scn : scenario_keys(c_max)) {
    for (auto& h : contributing_subscripts(scn.p, scn.c - 1)) out.emplace_back(scn, std::move(h));
  }
  return out;
}

ScenarioFields scenario_fields(const Scenario& scn) {
  ScenarioFields f;
  f.c = scn.c;
  f.b = scn.b;
  f.k = scn.k;
  f.p = scn.p;
  f.q = scn.q;
  f.superscript = scn.superscript.positions();
  return f;
}

ScenarioFields scenario_fields(const Scenario& scn, const CusumSubscript& h) {
  ScenarioFields f = scenario_fields(scn);
  f.h = h.entries();
  return f;
}

}  // namespace cusumlab
