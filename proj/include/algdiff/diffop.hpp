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

// Linear differential operators with polynomial coefficients, written either
// in d/dX or in the Euler operator theta = X d/dX, with coefficients on the
// left: L = c_0(X) + c_1(X) D + ... + c_r(X) D^r.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "algdiff/errors.hpp"
#include "algdiff/lift.hpp"
#include "algdiff/series.hpp"
#include "algdiff/unipoly.hpp"

namespace algdiff {

enum class OpVar { dx, theta };

inline const char* op_var_name(OpVar v) { return v == OpVar::dx ? "Dx" : "Tx"; }

template <Field K>
class DiffOp {
 public:
  using Poly = UniPoly<K>;
  using Elem = typename K::Elem;

  DiffOp(K k, OpVar var, std::vector<Poly> coeffs) : k_(std::move(k)), var_(var), c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const K& field() const { return k_; }
  OpVar var() const { return var_; }
  const std::vector<Poly>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Poly& leading() const { return c_.back(); }
  /// Largest degree in X among the coefficients.
  int degree_x() const {
    int d = -1;
    for (const auto& c : c_) d = std::max(d, c.degree());
    return d;
  }

  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.var_ == b.var_ && a.c_ == b.c_; }

  /// Primitive form: coefficients divided by their monic gcd, then scaled so
  /// the leading coefficient has leading scalar 1.
  DiffOp canonical() const {
    if (is_zero()) throw DomainError("zero operator has no canonical form");
    Poly g(k_);
    for (const auto& c : c_) g = gcd(g, c);
    std::vector<Poly> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(c.exact_div(g));
    const Elem s = k_.one() / r.back().lead();
    for (auto& c : r) c = s * c;
    return DiffOp(k_, var_, std::move(r));
  }

  /// Euler-operator form of a d/dX operator, obtained by multiplying on the
  /// left by the least power of X that makes every term X^a D^b have a >= b.
  DiffOp to_theta() const {
    if (var_ == OpVar::theta) return *this;
    std::size_t k = 0;
    for (std::size_t b = 0; b < c_.size(); ++b)
      if (!c_[b].is_zero()) k = std::max<std::size_t>(k, b > c_[b].valuation() ? b - c_[b].valuation() : 0);
    // X^(k+a) D^b = X^(k+a-b) * theta (theta-1) ... (theta-b+1)
    std::vector<Poly> out(c_.size(), Poly(k_));
    for (std::size_t b = 0; b < c_.size(); ++b) {
      if (c_[b].is_zero()) continue;
      const auto ff = falling_factorial(b);  // coefficients in theta
      const Poly shifted = shift_exponent(c_[b], static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(b));
      for (std::size_t j = 0; j < ff.size(); ++j)
        if (!is_zero_elem(ff[j])) out[j] += ff[j] * shifted;
    }
    return DiffOp(k_, OpVar::theta, std::move(out));
  }

  /// d/dX form via theta^j = sum_k S(j, k) X^k D^k.
  DiffOp to_dx() const {
    if (var_ == OpVar::dx) return *this;
    std::vector<Poly> out(c_.size(), Poly(k_));
    const auto s = stirling2(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      for (std::size_t k = 0; k <= j; ++k)
        if (!is_zero_elem(s[j][k])) out[k] += s[j][k] * c_[j].shift_up(k);
    }
    return DiffOp(k_, OpVar::dx, std::move(out));
  }

  /// Operator annihilating f(X - a) whenever this one annihilates f(X).
  DiffOp shift_x(const Elem& a) const {
    if (var_ == OpVar::theta) return to_dx().shift_x(a);
    std::vector<Poly> out;
    for (const auto& c : c_) out.push_back(c.shift(-a));
    return DiffOp(k_, OpVar::dx, std::move(out));
  }

  /// X^e * L.
  DiffOp mul_x_power(std::size_t e) const {
    std::vector<Poly> out;
    for (const auto& c : c_) out.push_back(c.shift_up(e));
    return DiffOp(k_, var_, std::move(out));
  }

  /// L(f) as a series. A d/dX operator of order r loses r terms of precision.
  template <class R, class Emb>
  TruncSeries<R> apply(const TruncSeries<R>& f, const Emb& emb) const {
    if (is_zero()) return TruncSeries<R>(std::vector<R>(f.precision()));
    const std::size_t loss = var_ == OpVar::dx ? static_cast<std::size_t>(order()) : 0;
    if (f.precision() < loss + 1) throw DomainError("series precision too small for the operator order");
    const std::size_t n = f.precision() - loss;
    TruncSeries<R> acc{std::vector<R>(n)};
    TruncSeries<R> d = f;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) d = var_ == OpVar::dx ? d.d_dx() : d.theta();
      if (!c_[i].is_zero()) acc += embed_series(c_[i], n, emb) * d.truncate(n);
    }
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    const std::string v = var_ == OpVar::dx ? "Dx" : "Tx";
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].to_string("X") + ")";
      if (i > 0) s += "*" + v + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  // theta (theta - 1) ... (theta - b + 1) as coefficients in theta.
  std::vector<Elem> falling_factorial(std::size_t b) const {
    std::vector<Elem> r{k_.one()};
    for (std::size_t i = 0; i < b; ++i) {
      std::vector<Elem> nr(r.size() + 1, k_.zero());
      const Elem mi = k_.from_int(-static_cast<std::int64_t>(i));
      for (std::size_t j = 0; j < r.size(); ++j) {
        nr[j + 1] += r[j];
        nr[j] += mi * r[j];
      }
      r = std::move(nr);
    }
    return r;
  }

  // Stirling numbers of the second kind S(j, k) for j < n.
  std::vector<std::vector<Elem>> stirling2(std::size_t n) const {
    std::vector<std::vector<Elem>> s(n, std::vector<Elem>(n + 1, k_.zero()));
    if (n == 0) return s;
    s[0][0] = k_.one();
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t k = 1; k <= j; ++k)
        s[j][k] = k_.from_int(static_cast<std::int64_t>(k)) * s[j - 1][k] + s[j - 1][k - 1];
    return s;
  }

  // c(X) * X^e for a possibly negative e that c's valuation absorbs.
  Poly shift_exponent(const Poly& c, std::ptrdiff_t e) const {
    if (e >= 0) return c.shift_up(static_cast<std::size_t>(e));
    const std::size_t d = static_cast<std::size_t>(-e);
    ALGDIFF_ASSERT(c.valuation() >= d, "negative power of X in theta conversion");
    return Poly(k_, std::vector<Elem>(c.coeffs().begin() + d, c.coeffs().end()));
  }

  K k_;
  OpVar var_;
  std::vector<Poly> c_;
};

}  // namespace algdiff
