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

// Exact Gaussian elimination for the homogeneous systems of the telescoping
// and approximation modules.
//
// A row is stored as a dense band [lo, lo + band.size()) inside the leading
// column range [0, tail_start) plus a dense tail over [tail_start, ncols).
// Banded systems keep their band through elimination because rows are only
// ever combined with pivot rows whose support starts at the same column.
// Dense systems simply use tail_start = 0.
//
// Over prime fields with p < 2^32 the row updates accumulate unreduced in
// 64-bit words and are reduced only when a row is scanned for its next pivot
// or when the accumulated bound would overflow.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "algdiff/errors.hpp"
#include "algdiff/field.hpp"

namespace algdiff {

namespace linalg_detail {

struct ModOps {
  using S = std::uint64_t;
  std::uint64_t p;
  unsigned lazy_limit;  // 0: reduce on every update

  explicit ModOps(std::uint64_t modulus) : p(modulus) {
    if (p < (1ull << 32)) {
      const unsigned __int128 sq = static_cast<unsigned __int128>(p - 1) * (p - 1);
      const unsigned __int128 room = std::numeric_limits<std::uint64_t>::max() - p;
      const unsigned __int128 lim = room / (sq ? sq : 1);
      lazy_limit = static_cast<unsigned>(std::min<unsigned __int128>(lim, 1u << 30));
    } else {
      lazy_limit = 0;
    }
  }
  S zero() const { return 0; }
  S one() const { return 1; }
  S reduce(S x) const { return x % p; }
  bool is_zero(S x) const { return x == 0; }
  S neg(S x) const { return x ? p - x : 0; }
  S mul(S a, S b) const { return Zp::mulmod(a, b, p); }
  S add(S a, S b) const { return (a + b) % p; }
  S inv(S x) const { return Zp::raw(x, p).inverse().value(); }
  void axpy(S* dst, const S* src, std::size_t n, S f) const {
    if (lazy_limit) {
      for (std::size_t i = 0; i < n; ++i) dst[i] += f * src[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) dst[i] = (dst[i] + Zp::mulmod(f, src[i], p)) % p;
    }
  }
};

template <Field K>
struct FieldOps {
  using S = typename K::Elem;
  K k;
  unsigned lazy_limit = 0;

  explicit FieldOps(K field) : k(std::move(field)) {}
  S zero() const { return k.zero(); }
  S one() const { return k.one(); }
  S reduce(const S& x) const { return x; }
  bool is_zero(const S& x) const { return is_zero_elem(x); }
  S neg(const S& x) const { return -x; }
  S mul(const S& a, const S& b) const { return a * b; }
  S add(const S& a, const S& b) const { return a + b; }
  S inv(const S& x) const { return k.one() / x; }
  void axpy(S* dst, const S* src, std::size_t n, const S& f) const {
    for (std::size_t i = 0; i < n; ++i)
      if (!is_zero_elem(src[i])) dst[i] += f * src[i];
  }
};

template <Field K>
using OpsFor = std::conditional_t<is_prime_field_v<K>, ModOps, FieldOps<K>>;

template <Field K>
OpsFor<K> make_ops(const K& k) {
  if constexpr (is_prime_field_v<K>)
    return ModOps(k.modulus());
  else
    return FieldOps<K>(k);
}

}  // namespace linalg_detail

template <class S>
struct SparseRow {
  std::size_t lo = 0;
  std::vector<S> band;
  std::vector<S> tail;
};

/// Homogeneous linear system A x = 0 given row by row.
template <Field K>
class LinearSystem {
 public:
  using Elem = typename K::Elem;
  using Ops = linalg_detail::OpsFor<K>;
  using S = typename Ops::S;

  LinearSystem(K field, std::size_t ncols, std::size_t tail_start = 0)
      : k_(std::move(field)), ops_(linalg_detail::make_ops(k_)), ncols_(ncols), tail_start_(tail_start) {
    ALGDIFF_ASSERT(tail_start <= ncols, "tail start beyond column count");
  }

  const K& field() const { return k_; }
  std::size_t cols() const { return ncols_; }
  std::size_t tail_start() const { return tail_start_; }
  std::size_t rows() const { return rows_.size(); }

  /// band covers columns [lo, lo + band.size()) < tail_start; tail covers
  /// [tail_start, ncols) or is empty for an all-zero tail.
  void add_row(std::size_t lo, const std::vector<Elem>& band, const std::vector<Elem>& tail) {
    ALGDIFF_ASSERT(band.empty() || lo + band.size() <= tail_start_, "band overlaps the tail");
    ALGDIFF_ASSERT(tail.empty() || tail.size() == ncols_ - tail_start_, "tail has the wrong width");
    SparseRow<S> r;
    r.lo = lo;
    r.band.reserve(band.size());
    for (const auto& v : band) r.band.push_back(to_storage(v));
    r.tail.assign(ncols_ - tail_start_, ops_.zero());
    for (std::size_t j = 0; j < tail.size(); ++j) r.tail[j] = to_storage(tail[j]);
    rows_.push_back(std::move(r));
  }

  void add_dense_row(const std::vector<Elem>& row) {
    ALGDIFF_ASSERT(row.size() == ncols_, "dense row has the wrong width");
    std::vector<Elem> band(row.begin(), row.begin() + tail_start_);
    std::vector<Elem> tail(row.begin() + tail_start_, row.end());
    add_row(0, band, tail);
  }

  /// Raw-storage row insertion for callers that already hold reduced values.
  void add_storage_row(SparseRow<S> r) {
    if (r.tail.empty()) r.tail.assign(ncols_ - tail_start_, ops_.zero());
    rows_.push_back(std::move(r));
  }

  S to_storage(const Elem& v) const {
    if constexpr (is_prime_field_v<K>)
      return v.value();
    else
      return v;
  }
  Elem from_storage(const S& v) const {
    if constexpr (is_prime_field_v<K>)
      return Zp::raw(v, k_.modulus());
    else
      return v;
  }

  const Ops& ops() const { return ops_; }
  std::vector<SparseRow<S>>& raw_rows() { return rows_; }

 private:
  K k_;
  Ops ops_;
  std::size_t ncols_, tail_start_;
  std::vector<SparseRow<S>> rows_;
};

/// Row echelon form of a LinearSystem: pivot rows normalized to a unit pivot,
/// listed in increasing pivot column.
template <Field K>
class Echelon {
 public:
  using Elem = typename K::Elem;
  using Ops = linalg_detail::OpsFor<K>;
  using S = typename Ops::S;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return ncols_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }
  const std::vector<std::size_t>& free_columns() const { return free_cols_; }

  /// Kernel vector with a 1 at the given free column and 0 at every other
  /// free column.
  std::vector<Elem> kernel_vector(std::size_t free_col) const {
    std::vector<S> x(ncols_, ops_.zero());
    x[free_col] = ops_.one();
    for (std::size_t t = pivots_.size(); t-- > 0;) {
      const std::size_t c = pivot_cols_[t];
      const SparseRow<S>& r = pivots_[t];
      S acc = ops_.zero();
      const std::size_t band_end = r.lo + r.band.size();
      for (std::size_t j = std::max(c + 1, r.lo); j < band_end; ++j) accumulate(acc, r.band[j - r.lo], x[j]);
      for (std::size_t j = std::max(c + 1, tail_start_); j < ncols_; ++j)
        accumulate(acc, r.tail[j - tail_start_], x[j]);
      x[c] = ops_.neg(finish(acc));
    }
    std::vector<Elem> out;
    out.reserve(ncols_);
    for (const auto& v : x) out.push_back(from_storage(v));
    return out;
  }

  std::vector<std::vector<Elem>> kernel_basis() const {
    std::vector<std::vector<Elem>> b;
    for (std::size_t f : free_cols_) b.push_back(kernel_vector(f));
    return b;
  }

 private:
  template <Field KK>
  friend Echelon<KK> eliminate(LinearSystem<KK> sys);

  void accumulate(S& acc, const S& a, const S& b) const {
    if (ops_.is_zero(b) || ops_.is_zero(a)) return;
    acc = ops_.add(acc, ops_.mul(a, b));
  }
  S finish(const S& acc) const { return acc; }
  Elem from_storage(const S& v) const {
    if constexpr (is_prime_field_v<K>)
      return Zp::raw(v, ops_.p);
    else
      return v;
  }

  explicit Echelon(Ops ops) : ops_(std::move(ops)) {}

  Ops ops_;
  std::size_t ncols_ = 0, tail_start_ = 0;
  std::vector<SparseRow<S>> pivots_;
  std::vector<std::size_t> pivot_cols_, free_cols_;
};

/// Gaussian elimination in column order; the pivot of each column is the
/// lowest-indexed remaining row with a nonzero entry there.
template <Field K>
Echelon<K> eliminate(LinearSystem<K> sys) {
  using Ops = typename Echelon<K>::Ops;
  using S = typename Ops::S;
  const Ops& ops = sys.ops();
  const std::size_t ncols = sys.cols(), ts = sys.tail_start();
  auto& rows = sys.raw_rows();
  std::vector<unsigned> pending(rows.size(), 0);

  auto entry = [&](SparseRow<S>& r, std::size_t c) -> S* {
    if (c >= ts) return &r.tail[c - ts];
    if (c >= r.lo && c < r.lo + r.band.size()) return &r.band[c - r.lo];
    return nullptr;
  };
  auto reduce_all = [&](SparseRow<S>& r) {
    for (auto& v : r.band) v = ops.reduce(v);
    for (auto& v : r.tail) v = ops.reduce(v);
  };
  // First column >= from holding a nonzero entry (reducing while scanning).
  auto first_nonzero = [&](SparseRow<S>& r, std::size_t from) -> std::size_t {
    const std::size_t band_end = r.lo + r.band.size();
    for (std::size_t c = std::max(from, r.lo); c < band_end; ++c) {
      S& v = r.band[c - r.lo];
      v = ops.reduce(v);
      if (!ops.is_zero(v)) return c;
    }
    if (!r.band.empty() && from <= band_end) {
      r.band.clear();
      r.band.shrink_to_fit();
    }
    for (std::size_t c = std::max(from, ts); c < ncols; ++c) {
      S& v = r.tail[c - ts];
      v = ops.reduce(v);
      if (!ops.is_zero(v)) return c;
    }
    return ncols;
  };

  std::vector<std::vector<std::size_t>> bucket(ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t f = first_nonzero(rows[i], 0);
    if (f < ncols) bucket[f].push_back(i);
  }

  Echelon<K> out{Ops(ops)};
  out.ncols_ = ncols;
  out.tail_start_ = ts;
  for (std::size_t c = 0; c < ncols; ++c) {
    std::vector<std::size_t> b = std::move(bucket[c]);
    if (b.empty()) {
      out.free_cols_.push_back(c);
      continue;
    }
    const auto it = std::min_element(b.begin(), b.end());
    const std::size_t pr = *it;
    SparseRow<S> piv = std::move(rows[pr]);
    reduce_all(piv);
    // Drop the leading zeros of the band so updates start at column c.
    if (c < ts && piv.lo < c) {
      piv.band.erase(piv.band.begin(), piv.band.begin() + (c - piv.lo));
      piv.lo = c;
    }
    const S scale = ops.inv(*entry(piv, c));
    if (!(scale == ops.one())) {
      for (auto& v : piv.band) v = ops.mul(v, scale);
      for (auto& v : piv.tail) v = ops.mul(v, scale);
    }
    const bool piv_tail_nonzero =
        std::any_of(piv.tail.begin(), piv.tail.end(), [&](const S& v) { return !ops.is_zero(v); });
    for (std::size_t ri : b) {
      if (ri == pr) continue;
      SparseRow<S>& r = rows[ri];
      const S f = ops.neg(*entry(r, c));
      if (c < ts && !piv.band.empty()) {
        const std::size_t piv_end = piv.lo + piv.band.size();
        const std::size_t r_end = r.lo + r.band.size();
        if (piv_end > r_end) r.band.resize(piv_end - r.lo, ops.zero());
        ops.axpy(r.band.data() + (c - r.lo), piv.band.data(), piv.band.size(), f);
      }
      if (piv_tail_nonzero) ops.axpy(r.tail.data(), piv.tail.data(), piv.tail.size(), f);
      *entry(r, c) = ops.zero();
      if (ops.lazy_limit && ++pending[ri] >= ops.lazy_limit) {
        reduce_all(r);
        pending[ri] = 0;
      }
      const std::size_t nf = first_nonzero(r, c + 1);
      if (nf < ncols) {
        bucket[nf].push_back(ri);
      } else {
        r = SparseRow<S>{};
      }
    }
    out.pivots_.push_back(std::move(piv));
    out.pivot_cols_.push_back(c);
  }
  return out;
}

/// Dense matrix helpers over a field.
template <Field K>
std::vector<std::vector<typename K::Elem>> kernel_basis(const K& k,
                                                        const std::vector<std::vector<typename K::Elem>>& m,
                                                        std::size_t ncols) {
  LinearSystem<K> sys(k, ncols, 0);
  for (const auto& r : m) sys.add_dense_row(r);
  return eliminate(std::move(sys)).kernel_basis();
}

template <Field K>
std::size_t rank(const K& k, const std::vector<std::vector<typename K::Elem>>& m, std::size_t ncols) {
  LinearSystem<K> sys(k, ncols, 0);
  for (const auto& r : m) sys.add_dense_row(r);
  return eliminate(std::move(sys)).rank();
}

/// Solves m x = rhs; returns nullopt when inconsistent. Free variables are 0.
template <Field K>
std::optional<std::vector<typename K::Elem>> solve(const K& k, const std::vector<std::vector<typename K::Elem>>& m,
                                                   const std::vector<typename K::Elem>& rhs) {
  const std::size_t n = m.empty() ? 0 : m[0].size();
  LinearSystem<K> sys(k, n + 1, 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = m[i];
    row.push_back(-rhs[i]);
    sys.add_dense_row(row);
  }
  const auto ech = eliminate(std::move(sys));
  const auto& fc = ech.free_columns();
  if (std::find(fc.begin(), fc.end(), n) == fc.end()) return std::nullopt;
  auto x = ech.kernel_vector(n);
  x.pop_back();
  return x;
}

}  // namespace algdiff
