#include "cusumlab/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace cusumlab {

SparsePolynomial::SparsePolynomial(int nvars, std::size_t cap) : nvars_(nvars), cap_(cap) {
  if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("SparsePolynomial supports 0..8 variables");
}

SparsePolynomial SparsePolynomial::constant(int nvars, const Integer& value) {
  SparsePolynomial out(nvars);
  out.add_term(0, value);
  return out;
}

SparsePolynomial SparsePolynomial::variable(int nvars, int index) {
  if (index < 1 || index > nvars) throw std::invalid_argument("variable index out of range");
  SparsePolynomial out(nvars);
  out.add_term(Key{1} << (8 * (index - 1)), 1);
  return out;
}

SparsePolynomial::Key SparsePolynomial::pack(std::span<const int> exponents) {
  if (exponents.size() > kMaxVars) throw std::invalid_argument("too many exponents");
  Key key = 0;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] < 0 || exponents[v] > 255) throw std::invalid_argument("exponent outside 0..255");
    key |= static_cast<Key>(exponents[v]) << (8 * v);
  }
  return key;
}

std::vector<int> SparsePolynomial::unpack(Key key) const {
  std::vector<int> out(static_cast<std::size_t>(nvars_));
  for (int v = 0; v < nvars_; ++v) out[v] = exponent(key, v);
  return out;
}

void SparsePolynomial::add_term(Key key, const Integer& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void SparsePolynomial::check_cap() const {
  if (terms_.size() > cap_) {
    throw ExpansionCapExceeded("polynomial expansion exceeded " + std::to_string(cap_) + " monomials");
  }
}

Integer SparsePolynomial::coefficient(std::span<const int> exponents) const {
  auto it = terms_.find(pack(exponents));
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer SparsePolynomial::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Integer(0) : it->second;
}

int SparsePolynomial::total_degree() const {
  int best = -1;
  for (const auto& [key, coef] : terms_) {
    int d = 0;
    for (int v = 0; v < nvars_; ++v) d += exponent(key, v);
    best = std::max(best, d);
  }
  return best;
}

std::size_t SparsePolynomial::negative_count() const {
  return static_cast<std::size_t>(
      std::count_if(terms_.begin(), terms_.end(), [](const auto& kv) { return sgn(kv.second) < 0; }));
}

bool SparsePolynomial::all_nonnegative() const { return negative_count() == 0; }

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("adding polynomials over different variables");
  for (const auto& [key, coef] : other.terms_) add_term(key, coef);
  check_cap();
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("subtracting polynomials over different variables");
  for (const auto& [key, coef] : other.terms_) add_term(key, -coef);
  check_cap();
  return *this;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& other) const {
  SparsePolynomial out = *this;
  out += other;
  return out;
}

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& other) const {
  SparsePolynomial out = *this;
  out -= other;
  return out;
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& other) const {
  if (other.nvars_ != nvars_) throw std::invalid_argument("multiplying polynomials over different variables");
  SparsePolynomial out(nvars_, std::min(cap_, other.cap_));
  out.terms_.reserve(std::min(out.cap_, terms_.size() * other.terms_.size()));
  Integer product;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) {
      // byte-wise addition cannot carry while every exponent stays <= 255
      product = ca * cb;
      out.add_term(ka + kb, product);
    }
    out.check_cap();
  }
  return out;
}

SparsePolynomial SparsePolynomial::scaled(const Integer& factor) const {
  SparsePolynomial out(nvars_, cap_);
  if (factor == 0) return out;
  for (const auto& [key, coef] : terms_) out.terms_.emplace(key, coef * factor);
  return out;
}

Rational SparsePolynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  // power tables keep evaluation linear in the number of terms
  std::vector<std::vector<Rational>> powers(static_cast<std::size_t>(nvars_));
  for (const auto& [key, coef] : terms_) {
    for (int v = 0; v < nvars_; ++v) {
      const int e = exponent(key, v);
      auto& table = powers[v];
      if (table.empty()) table.push_back(1);
      while (static_cast<int>(table.size()) <= e) table.push_back(table.back() * point[v]);
    }
  }
  Rational total = 0;
  for (const auto& [key, coef] : terms_) {
    Rational term = coef;
    for (int v = 0; v < nvars_; ++v) term *= powers[v][exponent(key, v)];
    total += term;
  }
  return total;
}

std::vector<std::pair<std::vector<int>, Integer>> SparsePolynomial::sorted_terms() const {
  std::vector<std::pair<std::vector<int>, Integer>> out;
  out.reserve(terms_.size());
  for (const auto& [key, coef] : terms_) out.emplace_back(unpack(key), coef);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [exps, coef] : sorted_terms()) {
    const bool negative = sgn(coef) < 0;
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    first = false;
    const Integer magnitude = abs(coef);
    const bool bare = std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    if (magnitude != 1 || bare) os << magnitude.get_str();
    bool need_star = magnitude != 1;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      if (need_star) os << "*";
      os << "x" << v + 1;
      if (exps[v] > 1) os << "^" << exps[v];
      need_star = true;
    }
  }
  return os.str();
}

bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

SparsePolynomial elementary_symmetric_polynomial(int nvars, const IndexSet& subset, int degree) {
  SparsePolynomial out(nvars);
  if (degree < 0 || degree > subset.size()) return out;
  for_each_subset(subset, degree, [&](const IndexSet& chosen) {
    SparsePolynomial::Key key = 0;
    for (int v : chosen) {
      if (v < 1 || v > nvars) throw std::invalid_argument("subset index outside the variables");
      key |= SparsePolynomial::Key{1} << (8 * (v - 1));
    }
    out.add_term(key, 1);
  });
  return out;
}

SparsePolynomial difference_substitution(const SparsePolynomial& poly) {
  using Key = SparsePolynomial::Key;
  const int n = poly.nvars();
  if (poly.total_degree() > 255) throw std::invalid_argument("substitution needs total degree <= 255");
  SparsePolynomial current = poly;
  // x_j -> x_{j+1} + s_j for j < n, then x_n -> 1 + s_n; s_j reuses slot j.
  for (int j = 0; j < n; ++j) {
    SparsePolynomial next(n, poly.cap());
    for (const auto& [key, coef] : current.terms()) {
      const int a = SparsePolynomial::exponent(key, j);
      const Key rest = key - (static_cast<Key>(a) << (8 * j));
      for (int t = 0; t <= a; ++t) {
        Key moved = rest + (static_cast<Key>(t) << (8 * j));
        if (j + 1 < n) moved += static_cast<Key>(a - t) << (8 * (j + 1));
        next.add_term(moved, coef * binomial(a, t));
      }
      if (next.size() > next.cap()) {
        throw ExpansionCapExceeded("substitution exceeded " + std::to_string(next.cap()) + " monomials");
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace cusumlab
