#include "cusumlab/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cusumlab {

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational out{Integer(num[0] == '+' ? num.substr(1) : num), d};
  out.canonicalize();
  return out;
}

int sign(const Rational& x) { return sgn(x); }

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("ratio with zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int c = size();
  std::vector<bool> seen(static_cast<std::size_t>(c) + 1, false);
  for (int v : images_) {
    if (v < 1 || v > c || seen[v]) throw std::invalid_argument("not a bijection on {1..c}");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int c) {
  std::vector<int> img(static_cast<std::size_t>(c));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int c, int x, int y) {
  auto img = identity(c).images_;
  std::swap(img[x - 1], img[y - 1]);
  return Permutation(std::move(img));
}

Permutation Permutation::after(const Permutation& inner) const {
  if (inner.size() != size()) throw std::invalid_argument("composing permutations of different degree");
  std::vector<int> img(images_.size());
  for (int m = 1; m <= size(); ++m) img[m - 1] = (*this)(inner(m));
  Permutation out;
  out.images_ = std::move(img);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (int m = 1; m <= size(); ++m) img[(*this)(m) - 1] = m;
  Permutation out;
  out.images_ = std::move(img);
  return out;
}

bool Permutation::is_identity() const {
  for (int m = 1; m <= size(); ++m) {
    if ((*this)(m) != m) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

IndexSet::IndexSet(std::initializer_list<int> elements) : IndexSet(std::vector<int>(elements)) {}

IndexSet::IndexSet(std::vector<int> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw std::invalid_argument("index set with duplicate elements");
  }
}

IndexSet IndexSet::range(int first, int last) {
  IndexSet out;
  for (int x = first; x <= last; ++x) out.elements_.push_back(x);
  return out;
}

bool IndexSet::contains(int x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

IndexSet IndexSet::set_minus(const IndexSet& other) const {
  IndexSet out;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elements_));
  return out;
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
  IndexSet out;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elements_));
  return out;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  IndexSet out;
  std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elements_));
  return out;
}

bool IndexSet::disjoint(const IndexSet& other) const { return intersect(other).empty(); }

void for_each_subset(const IndexSet& pool, int r, const std::function<void(const IndexSet&)>& fn) {
  const int n = pool.size();
  if (r < 0 || r > n) return;
  std::vector<int> pick(static_cast<std::size_t>(r));
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<int> chosen(static_cast<std::size_t>(r));
  while (true) {
    for (int t = 0; t < r; ++t) chosen[t] = pool.elements()[pick[t]];
    fn(IndexSet(chosen));
    int t = r - 1;
    while (t >= 0 && pick[t] == n - r + t) --t;
    if (t < 0) return;
    ++pick[t];
    for (int u = t + 1; u < r; ++u) pick[u] = pick[u - 1] + 1;
  }
}

std::vector<IndexSet> subsets_of_size(const IndexSet& pool, int r) {
  std::vector<IndexSet> out;
  for_each_subset(pool, r, [&](const IndexSet& s) { out.push_back(s); });
  return out;
}

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Integer binomial(int n, int r) {
  if (n < 0) throw std::invalid_argument("binomial with negative n");
  if (r < 0 || r > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

Rational extended_binomial(std::span<const int> h, int p) {
  if (static_cast<int>(h.size()) != p) throw std::invalid_argument("extended_binomial: |h| != p");
  std::vector<int> sorted(h.begin(), h.end());
  std::sort(sorted.begin(), sorted.end());
  Integer prod = 1;
  for (int alpha = 0; alpha < p; ++alpha) {
    const int factor = sorted[alpha] - alpha;
    if (factor <= 0) return 0;
    prod *= factor;
  }
  return ratio(prod, factorial(p));
}

// ---------------------------------------------------------------------------

Permutation sigma_K(const IndexSet& K, int c, int k) {
  if (K.size() != k) throw std::invalid_argument("sigma_K: |K| != k");
  if (!K.empty() && (K.elements().front() < 1 || K.elements().back() > c)) {
    throw std::invalid_argument("sigma_K: K not inside {1..c}");
  }
  const IndexSet Z = IndexSet::range(c - k + 1, c);
  const IndexSet k_only = K.set_minus(Z);
  const IndexSet z_only = Z.set_minus(K);
  auto img = Permutation::identity(c).images();
  for (int t = 0; t < k_only.size(); ++t) {
    std::swap(img[k_only.elements()[t] - 1], img[z_only.elements()[t] - 1]);
  }
  return Permutation(std::move(img));
}

std::vector<Permutation> pointwise_stabilizer(const IndexSet& fixed, int c) {
  const IndexSet moving = IndexSet::range(1, c).set_minus(fixed);
  std::vector<int> targets = moving.elements();
  std::vector<Permutation> out;
  do {
    auto img = Permutation::identity(c).images();
    for (int t = 0; t < moving.size(); ++t) img[moving.elements()[t] - 1] = targets[t];
    out.emplace_back(std::move(img));
  } while (std::next_permutation(targets.begin(), targets.end()));
  return out;
}

std::vector<Permutation> coset(const IndexSet& K, int c, int k) {
  const Permutation sigma = sigma_K(K, c, k);
  std::vector<Permutation> out;
  for (const Permutation& rho : pointwise_stabilizer(K, c)) out.push_back(rho.after(sigma));
  return out;
}

std::vector<Permutation> symmetric_group(int c) {
  std::vector<int> img = Permutation::identity(c).images();
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace cusumlab
