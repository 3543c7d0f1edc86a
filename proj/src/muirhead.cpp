#include "cusumlab/muirhead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cusumlab {

template <class T>
Configuration<T>::Configuration(std::vector<T> entries, int b, int k, bool limit)
    : entries_(std::move(entries)), b_(b), k_(k), limit_(limit) {
  const int n = c();
  if (b < 1 || b >= n) throw std::invalid_argument("configuration needs 1 <= b < c");
  if (k < 1 || k > n - b) throw std::invalid_argument("configuration needs 1 <= k <= c-b");
  for (int m = 1; m < n; ++m) {
    if ((*this)[m] < (*this)[m + 1]) throw std::invalid_argument("configuration entries must be non-increasing");
  }
  if (!(r() > 0)) throw std::invalid_argument("configuration needs r = a_b > 0");
  for (int m = n - k + 1; m <= n; ++m) {
    if ((*this)[m] != 0) throw std::invalid_argument("configuration needs exactly k trailing zeros");
  }
  if (!limit_ && !((*this)[n - k] > 0)) {
    throw std::invalid_argument("configuration needs a_{c-k} > 0 (use a limit configuration for a+)");
  }
}

template <class T>
Configuration<T> Configuration<T>::star(int c, int b, int k, T r) {
  std::vector<T> e(static_cast<std::size_t>(c), T(0));
  for (int m = 0; m < b; ++m) e[m] = r;
  return Configuration(std::move(e), b, k, true);
}

template <class T>
Configuration<T> Configuration<T>::aplus(int c, int b, int k, T r) {
  // The vanishing middle block enters every weight as w^0 = 1, so the limit
  // shares a*'s exponents while keeping the declared k.
  return star(c, b, k, r);
}

template <class T>
Configuration<T> Configuration<T>::path(int c, int b, int k, T r, T x) {
  std::vector<T> e(static_cast<std::size_t>(c), T(0));
  for (int m = 0; m < c - k; ++m) e[m] = m < b ? r : x;
  return Configuration(std::move(e), b, k, false);
}

template <class T>
OddsVector<T>::OddsVector(std::vector<T> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("empty odds vector");
  for (int m = 1; m < c(); ++m) {
    if ((*this)[m] < (*this)[m + 1]) throw std::invalid_argument("odds vector must be non-increasing");
  }
  if ((*this)[c()] < 1) throw std::invalid_argument("odds vector entries must be >= 1");
  for (int m = c(); m >= 1; --m) {
    if ((*this)[m] > 1) {
      lambda_ = m;
      break;
    }
  }
}

template <class T>
bool OddsVector<T>::all_equal() const {
  return entries_.front() == entries_.back();
}

MultiIndex::MultiIndex(std::vector<int> positions) : positions_(std::move(positions)) {
  for (std::size_t t = 0; t < positions_.size(); ++t) {
    if (positions_[t] < 1) throw std::invalid_argument("superscript entries start at 1");
    if (t > 0 && positions_[t] <= positions_[t - 1]) throw std::invalid_argument("superscript must strictly ascend");
  }
}

int MultiIndex::q(int b) const {
  return static_cast<int>(std::count_if(positions_.begin(), positions_.end(), [b](int i) { return i <= b; }));
}

void MultiIndex::validate(int c, int k) const {
  if (positions_.empty()) throw std::invalid_argument("empty superscript");
  if (positions_.back() > c - k) throw std::invalid_argument("superscript entries must be <= c-k");
}

bool CusumSubscript::has_repeat() const {
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

void CusumSubscript::validate(int c) const {
  if (entries_.empty()) throw std::invalid_argument("empty subscript");
  for (int v : entries_) {
    if (v < 1 || v > c) throw std::invalid_argument("subscript entries must lie in 1..c");
  }
}

bool is_contributing(const CusumSubscript& h) {
  auto sorted = h.entries();
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t alpha = 0; alpha < sorted.size(); ++alpha) {
    if (sorted[alpha] < static_cast<int>(alpha) + 1) return false;
  }
  return true;
}

int q_lower(int c, int b, int k, int p) { return std::max(0, b + k + p - c); }
int q_upper(int b, int p) { return std::min(b, p); }

Scenario Scenario::representative(int c, int b, int k, int p, int q) {
  std::vector<int> sup;
  for (int t = 1; t <= q; ++t) sup.push_back(t);
  for (int t = b + 1; t <= b + p - q; ++t) sup.push_back(t);
  Scenario s{c, b, k, p, q, MultiIndex(std::move(sup))};
  s.validate();
  return s;
}

Scenario Scenario::with_superscript(int c, int b, int k, MultiIndex superscript) {
  Scenario s{c, b, k, superscript.p(), superscript.q(b), std::move(superscript)};
  s.validate();
  return s;
}

Scenario Scenario::full(int c, int b, int k) {
  std::vector<int> sup;
  for (int t = 1; t <= c - k; ++t) sup.push_back(t);
  return with_superscript(c, b, k, MultiIndex(std::move(sup)));
}

void Scenario::validate() const {
  if (b < 1 || b >= c) throw std::invalid_argument("scenario needs 1 <= b < c");
  if (k < 1 || k > c - b - 1) throw std::invalid_argument("scenario needs 1 <= k <= c-b-1");
  if (p < 1 || p > c - k) throw std::invalid_argument("scenario needs 1 <= p <= c-k");
  if (q < q_lower(c, b, k, p) || q > q_upper(b, p)) {
    throw std::invalid_argument("scenario q outside [max(0,b+k+p-c), min(b,p)]");
  }
  if (superscript.p() != p || superscript.q(b) != q) throw std::invalid_argument("superscript inconsistent with (p, q)");
  superscript.validate(c, k);
}

// ---------------------------------------------------------------------------

template <class T>
T weight_product(const Permutation& pi, const Configuration<T>& a, const OddsVector<T>& w) {
  if (pi.size() != a.c() || w.c() != a.c()) throw std::invalid_argument("weight_product: size mismatch");
  T out(1);
  for (int m = 1; m <= a.c(); ++m) {
    if (ScalarOps<T>::is_zero(a[m])) continue;
    out *= ScalarOps<T>::power(w[pi(m)], a[m]);
  }
  return out;
}

template <class T>
T muirhead_ratio(std::span<const Permutation> perms, const Configuration<T>& a, const Configuration<T>& a_star,
                 const OddsVector<T>& w) {
  if (perms.empty()) throw std::invalid_argument("muirhead_ratio over an empty permutation set");
  T num(0);
  T den(0);
  for (const Permutation& pi : perms) {
    num += weight_product(pi, a, w);
    den += weight_product(pi, a_star, w);
  }
  return T(num / den);
}

template <class T>
bool submajorizes(const Configuration<T>& a, const Configuration<T>& a_star) {
  if (a.c() != a_star.c()) throw std::invalid_argument("submajorizes: length mismatch");
  T lhs(0);
  T rhs(0);
  for (int t = 1; t <= a.c(); ++t) {
    lhs += a[t];
    rhs += a_star[t];
    if (lhs < rhs) return false;
  }
  return true;
}

template <class T>
const T& CusumTable<T>::at(const CusumSubscript& h) const {
  if (h.p() != p_) throw std::invalid_argument("cusum table: dimension mismatch");
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int alpha = 1; alpha <= p_; ++alpha) {
    if (h[alpha] < 1 || h[alpha] > c_) throw std::out_of_range("cusum table: subscript out of range");
    idx += static_cast<std::size_t>(h[alpha] - 1) * stride;
    stride *= static_cast<std::size_t>(c_);
  }
  return prefix_[idx];
}

template <class T>
CusumTable<T> summed_area(int c, int p, std::vector<T> mass) {
  std::size_t total = 1;
  for (int alpha = 0; alpha < p; ++alpha) total *= static_cast<std::size_t>(c);
  if (mass.size() != total) throw std::invalid_argument("summed_area: mass size mismatch");
  std::size_t stride = 1;
  for (int alpha = 0; alpha < p; ++alpha) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      if ((idx / stride) % static_cast<std::size_t>(c) != 0) mass[idx] += mass[idx - stride];
    }
    stride *= static_cast<std::size_t>(c);
  }
  return CusumTable<T>(c, p, std::move(mass));
}

template <class T>
DirectEvaluator<T>::DirectEvaluator(const Configuration<T>& a, const OddsVector<T>& w)
    : c_(a.c()), b_(a.b()), k_(a.k()) {
  if (w.c() != c_) throw std::invalid_argument("configuration and odds vector differ in length");
  if (c_ > kMaxC) throw std::invalid_argument("direct enumeration is capped at c <= 8");
  n_subsets_ = from_integer<T>(binomial(c_ - b_, k_));

  // power[m][v] = w_v ^ a_m
  const Configuration<T> star = a.star();
  std::vector<std::vector<T>> pw_a(c_ + 1, std::vector<T>(c_ + 1, T(1)));
  std::vector<std::vector<T>> pw_star(c_ + 1, std::vector<T>(c_ + 1, T(1)));
  for (int m = 1; m <= c_; ++m) {
    for (int v = 1; v <= c_; ++v) {
      if (!ScalarOps<T>::is_zero(a[m])) pw_a[m][v] = ScalarOps<T>::power(w[v], a[m]);
      if (!ScalarOps<T>::is_zero(star[m])) pw_star[m][v] = ScalarOps<T>::power(w[v], star[m]);
    }
  }
  auto weights = [&](const std::vector<Permutation>& perms, std::vector<T>& num, T& den) {
    num.clear();
    den = T(0);
    for (const Permutation& pi : perms) {
      T n(1);
      T d(1);
      for (int m = 1; m <= c_; ++m) {
        n *= pw_a[m][pi(m)];
        d *= pw_star[m][pi(m)];
      }
      num.push_back(n);
      den += d;
    }
  };

  for_each_subset(IndexSet::range(b_ + 1, c_), k_, [&](const IndexSet& K) {
    Block blk;
    blk.perms = coset(K, c_, k_);
    weights(blk.perms, blk.numerators, blk.denominator);
    for (T& v : blk.numerators) v /= blk.denominator;
    cosets_.push_back(std::move(blk));
  });
  full_.perms = symmetric_group(c_);
  weights(full_.perms, full_.numerators, full_.denominator);
  for (T& v : full_.numerators) v = T(-(v * n_subsets_) / full_.denominator);
}

template <class T>
template <class Pred>
T DirectEvaluator<T>::restricted(Pred keep) const {
  T total(0);
  auto add = [&](const Block& blk) {
    for (std::size_t t = 0; t < blk.perms.size(); ++t) {
      if (keep(blk.perms[t])) total += blk.numerators[t];
    }
  };
  for (const Block& blk : cosets_) add(blk);
  add(full_);
  return total;
}

template <class T>
T DirectEvaluator<T>::F() const {
  return restricted([](const Permutation&) { return true; });
}

template <class T>
T DirectEvaluator<T>::component(const MultiIndex& i, const CusumSubscript& j) const {
  if (i.p() != j.p()) throw std::invalid_argument("component: |i| != |j|");
  i.validate(c_, k_);
  j.validate(c_);
  if (j.has_repeat()) return T(0);
  return restricted([&](const Permutation& pi) {
    for (int alpha = 1; alpha <= i.p(); ++alpha) {
      if (pi(i[alpha]) != j[alpha]) return false;
    }
    return true;
  });
}

template <class T>
T DirectEvaluator<T>::cusum(const MultiIndex& i, const CusumSubscript& h) const {
  if (i.p() != h.p()) throw std::invalid_argument("cusum: |i| != |h|");
  i.validate(c_, k_);
  h.validate(c_);
  // pi(i) is repeat-free, so the box filter keeps exactly the distinct-subscript terms.
  return restricted([&](const Permutation& pi) {
    for (int alpha = 1; alpha <= i.p(); ++alpha) {
      if (pi(i[alpha]) > h[alpha]) return false;
    }
    return true;
  });
}

template <class T>
CusumTable<T> DirectEvaluator<T>::cusum_table(const MultiIndex& i) const {
  i.validate(c_, k_);
  const int p = i.p();
  std::size_t total = 1;
  for (int alpha = 0; alpha < p; ++alpha) total *= static_cast<std::size_t>(c_);
  std::vector<T> mass(total, T(0));
  auto deposit = [&](const Block& blk) {
    for (std::size_t t = 0; t < blk.perms.size(); ++t) {
      std::size_t idx = 0;
      std::size_t stride = 1;
      for (int alpha = 1; alpha <= p; ++alpha) {
        idx += static_cast<std::size_t>(blk.perms[t](i[alpha]) - 1) * stride;
        stride *= static_cast<std::size_t>(c_);
      }
      mass[idx] += blk.numerators[t];
    }
  };
  for (const Block& blk : cosets_) deposit(blk);
  deposit(full_);
  return summed_area<T>(c_, p, std::move(mass));
}

template <class T>
T eval_F(const Configuration<T>& a, const OddsVector<T>& w) {
  return DirectEvaluator<T>(a, w).F();
}

namespace {
void check_scenario_matches(const Scenario& scn, int c, int b, int k) {
  if (scn.c != c || scn.b != b || scn.k != k) throw std::invalid_argument("scenario does not match configuration");
}
}  // namespace

template <class T>
T eval_component(const Scenario& scn, const MultiIndex& i, const CusumSubscript& j, const Configuration<T>& a,
                 const OddsVector<T>& w) {
  check_scenario_matches(scn, a.c(), a.b(), a.k());
  return DirectEvaluator<T>(a, w).component(i, j);
}

template <class T>
T eval_cusum(const Scenario& scn, const MultiIndex& i, const CusumSubscript& h, const Configuration<T>& a,
             const OddsVector<T>& w) {
  check_scenario_matches(scn, a.c(), a.b(), a.k());
  return DirectEvaluator<T>(a, w).cusum(i, h);
}

double derivative_identity_check(const Scenario& scn, int i_pos, const CusumSubscript& j,
                                 const Configuration<double>& a, const OddsVector<double>& w, double step) {
  check_scenario_matches(scn, a.c(), a.b(), a.k());
  const MultiIndex& sup = scn.superscript;
  if (sup.p() != j.p()) throw std::invalid_argument("derivative check: |j| != p");
  const auto& pos = sup.positions();
  const auto it = std::find(pos.begin(), pos.end(), i_pos);
  if (it == pos.end()) throw std::invalid_argument("derivative check: i_pos not in the superscript");
  if (i_pos == a.b()) throw std::invalid_argument("derivative check: a_b is pinned to r");
  if (!(step > 0)) throw std::invalid_argument("derivative check: step must be positive");
  const int n = a.c();
  const double here = a[i_pos];
  const double upper = i_pos > 1 ? a[i_pos - 1] : INFINITY;
  const double lower = i_pos < n ? a[i_pos + 1] : 0.0;
  if (here + step > upper || here - step < lower || here - step <= 0.0) {
    throw std::invalid_argument("derivative check: step too large to preserve ordering");
  }
  auto shifted = [&](double delta) {
    auto e = a.entries();
    e[i_pos - 1] += delta;
    return Configuration<double>(std::move(e), a.b(), a.k(), a.is_limit());
  };
  const double f0 = DirectEvaluator<double>(a, w).component(sup, j);
  const double fp = DirectEvaluator<double>(shifted(step), w).component(sup, j);
  const double fm = DirectEvaluator<double>(shifted(-step), w).component(sup, j);
  const double fd = (fp - fm) / (2.0 * step);
  const int alpha = static_cast<int>(it - pos.begin()) + 1;
  const double analytic = f0 * std::log(w[j[alpha]]);
  const double scale = std::max(std::abs(analytic), std::abs(f0));
  if (scale == 0.0) return std::abs(fd);
  return std::abs(fd - analytic) / scale;
}

#define CUSUMLAB_INSTANTIATE(T)                                                                                \
  template class Configuration<T>;                                                                             \
  template class OddsVector<T>;                                                                                \
  template class CusumTable<T>;                                                                                \
  template class DirectEvaluator<T>;                                                                           \
  template CusumTable<T> summed_area<T>(int, int, std::vector<T>);                                             \
  template T weight_product<T>(const Permutation&, const Configuration<T>&, const OddsVector<T>&);             \
  template T muirhead_ratio<T>(std::span<const Permutation>, const Configuration<T>&, const Configuration<T>&, \
                               const OddsVector<T>&);                                                          \
  template bool submajorizes<T>(const Configuration<T>&, const Configuration<T>&);                             \
  template T eval_F<T>(const Configuration<T>&, const OddsVector<T>&);                                         \
  template T eval_component<T>(const Scenario&, const MultiIndex&, const CusumSubscript&,                      \
                               const Configuration<T>&, const OddsVector<T>&);                                 \
  template T eval_cusum<T>(const Scenario&, const MultiIndex&, const CusumSubscript&, const Configuration<T>&, \
                           const OddsVector<T>&);

CUSUMLAB_INSTANTIATE(Rational)
CUSUMLAB_INSTANTIATE(double)

}  // namespace cusumlab
