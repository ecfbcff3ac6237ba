// Copyright 2026 The algdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "algdiff/field.hpp"
#include "algdiff/kernels.hpp"

namespace algdiff {

/// Dense univariate polynomial over a field K. Coefficients are indexed by
/// exponent and never carry a trailing zero; the zero polynomial has no
/// coefficients and degree() == -1.
template <Field K>
class UniPoly {
 public:
  using Elem = typename K::Elem;

  explicit UniPoly(K field = K{}) : k_(std::move(field)) {}
  UniPoly(K field, std::vector<Elem> coeffs) : k_(std::move(field)), c_(std::move(coeffs)) { trim(); }
  UniPoly(K field, std::initializer_list<std::int64_t> coeffs) : k_(std::move(field)) {
    for (auto v : coeffs) c_.push_back(k_.from_int(v));
    trim();
  }

  static UniPoly constant(const K& field, Elem c) { return UniPoly(field, std::vector<Elem>{std::move(c)}); }
  static UniPoly monomial(const K& field, Elem c, std::size_t e) {
    std::vector<Elem> v(e + 1, field.zero());
    v[e] = std::move(c);
    return UniPoly(field, std::move(v));
  }
  /// The polynomial x.
  static UniPoly x(const K& field) { return monomial(field, field.one(), 1); }

  const K& field() const { return k_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : k_.zero(); }
  const Elem& operator[](std::size_t i) const { return c_[i]; }
  Elem lead() const { return c_.empty() ? k_.zero() : c_.back(); }

  Elem operator()(const Elem& x) const {
    Elem acc = k_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    a.check(b);
    std::vector<Elem> r(std::max(a.size(), b.size()), a.k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b.c_[i];
    return UniPoly(a.k_, std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    a.check(b);
    std::vector<Elem> r(std::max(a.size(), b.size()), a.k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b.c_[i];
    return UniPoly(a.k_, std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a) {
    std::vector<Elem> r = a.c_;
    for (auto& v : r) v = -v;
    return UniPoly(a.k_, std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return UniPoly(a.k_);
    if constexpr (std::is_default_constructible_v<Elem>) {
      return UniPoly(a.k_, kernels::mul(a.c_, b.c_));
    } else {
      std::vector<Elem> r(a.size() + b.size() - 1, a.k_.zero());
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero_elem(a.c_[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
      }
      return UniPoly(a.k_, std::move(r));
    }
  }
  friend UniPoly operator*(const Elem& s, const UniPoly& a) {
    if (is_zero_elem(s)) return UniPoly(a.k_);
    std::vector<Elem> r = a.c_;
    for (auto& v : r) v = s * v;
    return UniPoly(a.k_, std::move(r));
  }
  UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
  UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
  UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
    check(d);
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    if (degree() < d.degree()) return {UniPoly(k_), *this};
    std::vector<Elem> r = c_;
    std::vector<Elem> q(c_.size() - d.c_.size() + 1, k_.zero());
    const Elem inv = k_.one() / d.lead();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = r.size(); i-- > dd;) {
      if (is_zero_elem(r[i])) continue;
      const Elem f = r[i] * inv;
      q[i - dd] = f;
      for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
    }
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(dd), r.end());
    return {UniPoly(k_, std::move(q)), UniPoly(k_, std::move(r))};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divrem(b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divrem(b).second; }

  /// Quotient of an exact division; throws if the remainder is nonzero.
  UniPoly exact_div(const UniPoly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw InvariantError("inexact polynomial division");
    return q;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return (k_.one() / lead()) * *this;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(k_);
    std::vector<Elem> r(c_.size() - 1, k_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = k_.from_int(static_cast<std::int64_t>(i)) * c_[i];
    return UniPoly(k_, std::move(r));
  }

  /// p(x + a), by repeated synthetic division.
  UniPoly shift(const Elem& a) const {
    std::vector<Elem> r = c_;
    const std::size_t n = r.size();
    if (is_zero_elem(a) || n <= 1) return *this;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j-- > i;) r[j] += a * r[j + 1];
    return UniPoly(k_, std::move(r));
  }

  /// Multiplication by x^e.
  UniPoly shift_up(std::size_t e) const {
    if (is_zero()) return *this;
    std::vector<Elem> r(e, k_.zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return UniPoly(k_, std::move(r));
  }

  /// Largest e with x^e | p (0 for the zero polynomial).
  std::size_t valuation() const {
    std::size_t e = 0;
    while (e < c_.size() && is_zero_elem(c_[e])) ++e;
    return e == c_.size() ? 0 : e;
  }

  UniPoly truncate(std::size_t n) const {
    return UniPoly(k_, std::vector<Elem>(c_.begin(), c_.begin() + std::min(n, c_.size())));
  }

  UniPoly pow(unsigned e) const {
    UniPoly r = constant(k_, k_.one()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  std::string to_string(const char* var = "X") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (is_zero_elem(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + k_.to_string(c_[i]) + ")";
      if (i > 0) s += std::string("*") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero_elem(c_.back())) c_.pop_back();
  }
  void check(const UniPoly& o) const {
    if (!(k_ == o.k_)) throw DomainError("field mismatch");
  }

  K k_;
  std::vector<Elem> c_;
};

/// Monic gcd (zero if both inputs are zero).
template <Field K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    UniPoly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <Field K>
struct XgcdResult {
  UniPoly<K> g, s, t;  // g = s*a + t*b, g monic
};

template <Field K>
XgcdResult<K> xgcd(const UniPoly<K>& a, const UniPoly<K>& b) {
  const K& k = a.field();
  UniPoly<K> r0 = a, r1 = b;
  UniPoly<K> s0 = UniPoly<K>::constant(k, k.one()), s1(k);
  UniPoly<K> t0(k), t1 = UniPoly<K>::constant(k, k.one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const auto inv = k.one() / r0.lead();
  return {inv * r0, inv * s0, inv * t0};
}

}  // namespace algdiff
