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

// Rational functions K(X), kept reduced with a monic denominator.

#pragma once

#include <string>
#include <utility>

#include "algdiff/unipoly.hpp"

namespace algdiff {

template <Field K>
class RatFunc {
 public:
  using Poly = UniPoly<K>;

  explicit RatFunc(const K& k) : num_(k), den_(Poly::constant(k, k.one())) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.field().one())) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const K& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    const Poly g = gcd(a.den_, b.den_);
    const Poly bd = b.den_ / g;
    return RatFunc(a.num_ * bd + b.num_ * (a.den_ / g), a.den_ * bd);
  }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_, Reduced{}); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    const Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return RatFunc((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("division by zero rational function");
    return a * RatFunc(b.den_, b.num_);
  }
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  std::string to_string() const {
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw DomainError("zero denominator");
    const K& k = den_.field();
    if (num_.is_zero()) {
      den_ = Poly::constant(k, k.one());
      return;
    }
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const auto s = k.one() / den_.lead();
    num_ = s * num_;
    den_ = s * den_;
  }

  Poly num_, den_;
};

template <Field K>
bool is_zero(const RatFunc<K>& a) {
  return a.is_zero();
}

/// Field context for K(X); lets the generic polynomial and matrix code run
/// over rational functions.
template <Field K>
class RatFuncField {
 public:
  using Elem = RatFunc<K>;

  explicit RatFuncField(K base) : k_(std::move(base)) {}

  Elem zero() const { return Elem(k_); }
  Elem one() const { return Elem(UniPoly<K>::constant(k_, k_.one())); }
  Elem from_int(std::int64_t n) const { return Elem(UniPoly<K>::constant(k_, k_.from_int(n))); }
  Elem from_poly(UniPoly<K> p) const { return Elem(std::move(p)); }
  std::string to_string(const Elem& a) const { return a.to_string(); }
  FieldSpec spec() const { return k_.spec(); }
  const K& base() const { return k_; }

  friend bool operator==(const RatFuncField& a, const RatFuncField& b) { return a.k_ == b.k_; }

 private:
  K k_;
};

}  // namespace algdiff
