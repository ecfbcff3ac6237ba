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

// Dense product kernels shared by polynomials and truncated series.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "algdiff/field.hpp"

namespace algdiff::kernels {

inline constexpr std::size_t kKaratsubaThreshold = 32;

namespace detail {

using u64 = std::uint64_t;

inline u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

// out[0 .. 2n-1) = a[0..n) * b[0..n)
inline void school_raw(const u64* a, const u64* b, std::size_t n, u64* out, u64 p) {
  if (p < (1ull << 29)) {
    // Up to kKaratsubaThreshold products < 2^58 fit in a u64 accumulator.
    for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
      u64 acc = 0;
      const std::size_t lo = k >= n ? k - n + 1 : 0;
      const std::size_t hi = std::min(k, n - 1);
      for (std::size_t i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
      out[k] = acc % p;
    }
    return;
  }
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    unsigned __int128 acc = 0;
    const std::size_t lo = k >= n ? k - n + 1 : 0;
    const std::size_t hi = std::min(k, n - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      acc += static_cast<unsigned __int128>(a[i]) * b[k - i];
      if ((i & 15) == 15) acc %= p;
    }
    out[k] = static_cast<u64>(acc % p);
  }
}

inline void kara_raw(const u64* a, const u64* b, std::size_t n, u64* out, u64 p) {
  if (n <= kKaratsubaThreshold) {
    school_raw(a, b, n, out, p);
    return;
  }
  const std::size_t h = n / 2, hh = n - h;
  std::fill(out, out + 2 * n - 1, 0);
  kara_raw(a, b, h, out, p);                   // z0 in [0, 2h-1)
  kara_raw(a + h, b + h, hh, out + 2 * h, p);  // z2 in [2h, 2n-1)
  std::vector<u64> sa(hh), sb(hh), z1(2 * hh - 1);
  for (std::size_t i = 0; i < hh; ++i) {
    sa[i] = i < h ? addm(a[i], a[h + i], p) : a[h + i];
    sb[i] = i < h ? addm(b[i], b[h + i], p) : b[h + i];
  }
  kara_raw(sa.data(), sb.data(), hh, z1.data(), p);
  for (std::size_t i = 0; i + 1 < 2 * h; ++i) z1[i] = subm(z1[i], out[i], p);
  for (std::size_t i = 0; i + 1 < 2 * hh; ++i) z1[i] = subm(z1[i], out[2 * h + i], p);
  for (std::size_t i = 0; i + 1 < 2 * hh; ++i) out[h + i] = addm(out[h + i], z1[i], p);
}

template <class R>
void school(const R* a, const R* b, std::size_t n, R* out) {
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) out[k] = R{};
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j) out[i + j] += a[i] * b[j];
  }
}

template <class R>
void kara(const R* a, const R* b, std::size_t n, R* out) {
  if (n <= kKaratsubaThreshold) {
    school(a, b, n, out);
    return;
  }
  const std::size_t h = n / 2, hh = n - h;
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) out[k] = R{};
  kara(a, b, h, out);
  kara(a + h, b + h, hh, out + 2 * h);
  std::vector<R> sa(hh), sb(hh), z1(2 * hh - 1);
  for (std::size_t i = 0; i < hh; ++i) {
    sa[i] = i < h ? a[i] + a[h + i] : a[h + i];
    sb[i] = i < h ? b[i] + b[h + i] : b[h + i];
  }
  kara(sa.data(), sb.data(), hh, z1.data());
  for (std::size_t i = 0; i + 1 < 2 * h; ++i) z1[i] -= out[i];
  for (std::size_t i = 0; i + 1 < 2 * hh; ++i) z1[i] -= out[2 * h + i];
  for (std::size_t i = 0; i + 1 < 2 * hh; ++i) out[h + i] += z1[i];
}

inline std::uint64_t modulus_of(std::span<const Zp> a, std::span<const Zp> b) {
  for (const Zp& z : a)
    if (z.modulus()) return z.modulus();
  for (const Zp& z : b)
    if (z.modulus()) return z.modulus();
  return 0;
}

}  // namespace detail

/// Raw product over Z/pZ of reduced residues; result has n+m-1 entries.
inline std::vector<std::uint64_t> mul_mod(std::span<const std::uint64_t> a,
                                          std::span<const std::uint64_t> b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::uint64_t> out(n + m - 1, 0), part(2 * m - 1), chunk(m);
  for (std::size_t off = 0; off < n; off += m) {
    const std::size_t len = std::min(m, n - off);
    std::fill(chunk.begin(), chunk.end(), 0);
    std::copy_n(a.begin() + off, len, chunk.begin());
    detail::kara_raw(chunk.data(), b.data(), m, part.data(), p);
    for (std::size_t i = 0; i < 2 * m - 1 && off + i < out.size(); ++i)
      out[off + i] = detail::addm(out[off + i], part[i], p);
  }
  return out;
}

/// Product of two dense coefficient vectors over a commutative ring whose
/// value-initialized element is zero. Result has n+m-1 entries (empty if
/// either input is empty).
template <class R>
std::vector<R> mul(std::span<const R> a, std::span<const R> b) {
  if (a.empty() || b.empty()) return {};
  if constexpr (requires { R::kronecker_mul(a, b); }) {
    return R::kronecker_mul(a, b);
  } else if constexpr (std::is_same_v<R, Zp>) {
    const std::uint64_t p = detail::modulus_of(a, b);
    if (p == 0) return std::vector<R>(a.size() + b.size() - 1);
    std::vector<std::uint64_t> ra(a.size()), rb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ra[i] = a[i].value();
    for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[i].value();
    const auto rc = mul_mod(ra, rb, p);
    std::vector<R> out(rc.size());
    for (std::size_t i = 0; i < rc.size(); ++i) out[i] = Zp::raw(rc[i], p);
    return out;
  } else {
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t n = a.size(), m = b.size();
    std::vector<R> out(n + m - 1);
    if (m <= kKaratsubaThreshold) {
      for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < m; ++j) out[i + j] += a[i] * b[j];
      }
      return out;
    }
    std::vector<R> part(2 * m - 1), chunk(m);
    for (std::size_t off = 0; off < n; off += m) {
      const std::size_t len = std::min(m, n - off);
      std::fill(chunk.begin(), chunk.end(), R{});
      std::copy_n(a.begin() + off, len, chunk.begin());
      detail::kara(chunk.data(), b.data(), m, part.data());
      for (std::size_t i = 0; i < 2 * m - 1 && off + i < out.size(); ++i) out[off + i] += part[i];
    }
    return out;
  }
}

template <class R>
std::vector<R> mul(const std::vector<R>& a, const std::vector<R>& b) {
  return mul(std::span<const R>(a), std::span<const R>(b));
}

/// Product truncated to its first n coefficients.
template <class R>
std::vector<R> mul_trunc(std::span<const R> a, std::span<const R> b, std::size_t n) {
  a = a.first(std::min(a.size(), n));
  b = b.first(std::min(b.size(), n));
  auto out = mul(a, b);
  out.resize(n);
  return out;
}

}  // namespace algdiff::kernels
