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
#include <span>
#include <utility>
#include <vector>

#include "algdiff/errors.hpp"
#include "algdiff/field.hpp"
#include "algdiff/kernels.hpp"

namespace algdiff {

/// Power series known modulo X^precision. The coefficient ring R is the base
/// field element type or an algebra element; R{} must be its zero.
template <class R>
class TruncSeries {
 public:
  TruncSeries() = default;
  /// A series whose precision is the number of given coefficients.
  explicit TruncSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {}
  /// Pads with zeros or truncates to the given precision.
  TruncSeries(std::vector<R> coeffs, std::size_t precision) : c_(std::move(coeffs)) { c_.resize(precision); }

  std::size_t precision() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }
  std::vector<R>& coeffs() { return c_; }
  const R& operator[](std::size_t i) const { return c_[i]; }
  R& operator[](std::size_t i) { return c_[i]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const R& v) { return is_zero_elem(v); });
  }

  TruncSeries truncate(std::size_t n) const {
    return TruncSeries(std::vector<R>(c_.begin(), c_.begin() + std::min(n, c_.size())));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.precision(), b.precision());
    std::vector<R> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a.c_[i] + b.c_[i];
    return TruncSeries(std::move(r));
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.precision(), b.precision());
    std::vector<R> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a.c_[i] - b.c_[i];
    return TruncSeries(std::move(r));
  }
  friend TruncSeries operator-(const TruncSeries& a) {
    std::vector<R> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -a.c_[i];
    return TruncSeries(std::move(r));
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.precision(), b.precision());
    return TruncSeries(kernels::mul_trunc(std::span<const R>(a.c_), std::span<const R>(b.c_), n));
  }
  template <class S>
  friend TruncSeries operator*(const S& s, const TruncSeries& a)
    requires(!std::same_as<S, TruncSeries>) && requires(const S& x, const R& y) {
      { x * y } -> std::convertible_to<R>;
    }
  {
    std::vector<R> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * a.c_[i];
    return TruncSeries(std::move(r));
  }
  TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
  TruncSeries& operator-=(const TruncSeries& b) { return *this = *this - b; }
  TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }

  /// Coefficient n of the result is (n+1) f_{n+1}; precision drops by one.
  TruncSeries d_dx() const {
    if (c_.empty()) throw DomainError("derivative of a zero-precision series");
    std::vector<R> r(c_.size() - 1);
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) r[i] = mul_int(c_[i + 1], static_cast<std::int64_t>(i + 1));
    return TruncSeries(std::move(r));
  }

  /// Euler operator X d/dX; precision unchanged.
  TruncSeries theta() const {
    if (c_.empty()) throw DomainError("derivative of a zero-precision series");
    std::vector<R> r(c_.size());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i] = mul_int(c_[i], static_cast<std::int64_t>(i));
    return TruncSeries(std::move(r));
  }

  /// Multiplicative inverse by Newton iteration; the constant term must be a unit.
  TruncSeries inverse() const {
    if (c_.empty()) throw DomainError("inverse of a zero-precision series");
    const std::size_t n = c_.size();
    std::vector<R> g{inv(c_[0])};
    const R two = mul_int(one_like(g[0]), 2);
    std::size_t k = 1;
    while (k < n) {
      const std::size_t k2 = std::min(2 * k, n);
      std::span<const R> f(c_.data(), k2);
      auto fg = kernels::mul_trunc(f, std::span<const R>(g), k2);
      for (auto& v : fg) v = -v;
      fg[0] = fg[0] + two;
      g = kernels::mul_trunc(std::span<const R>(g), std::span<const R>(fg), k2);
      k = k2;
    }
    return TruncSeries(std::move(g));
  }

 private:
  std::vector<R> c_;
};

}  // namespace algdiff
