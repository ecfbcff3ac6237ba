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

// Padé and Padé-Hermite approximation. The Hermite solver over a quotient
// algebra runs Gaussian elimination on the flattened coordinates and, when a
// pivot turns out to be a zero divisor, moves to the factor of the modulus
// on which that pivot is a unit and starts over.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "algdiff/algebra.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/linalg.hpp"
#include "algdiff/series.hpp"
#include "algdiff/unipoly.hpp"

namespace algdiff {

template <Field K>
struct PadeResult {
  UniPoly<K> num;
  UniPoly<K> den;
};

/// Rational reconstruction: den * f = num mod X^(d_num + d_den + 1) with
/// deg num <= d_num and deg den <= d_den, by the extended Euclidean
/// algorithm on (X^(d_num + d_den + 1), f). The denominator is scaled to
/// den(0) = 1 when den(0) != 0 and made monic otherwise.
template <Field K>
PadeResult<K> pade(const K& k, const TruncSeries<typename K::Elem>& f, int d_num, int d_den) {
  using Poly = UniPoly<K>;
  if (d_num < 0 || d_den < 0) throw DomainError("negative Padé degree");
  const std::size_t n = static_cast<std::size_t>(d_num + d_den + 1);
  if (f.precision() < n) throw DomainError("series precision below d_num + d_den + 1");
  Poly r0 = Poly::monomial(k, k.one(), n);
  Poly r1(k, std::vector<typename K::Elem>(f.coeffs().begin(), f.coeffs().begin() + n));
  Poly t0(k), t1 = Poly::constant(k, k.one());
  while (r1.degree() > d_num) {
    auto [q, r] = r0.divrem(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly t = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (t1.is_zero() || t1.degree() > d_den)
    throw ReconstructionError("no Padé approximant of type (" + std::to_string(d_num) + ", " +
                              std::to_string(d_den) + ")");
  const auto c0 = t1.coeff(0);
  const auto s = k.one() / (is_zero_elem(c0) ? t1.lead() : c0);
  return {s * r1, s * t1};
}

template <Field K>
struct PHSolution {
  std::vector<UniPoly<K>> ells;
};

/// Number of approximation conditions for m + 1 series and degree bound
/// b_x: one less than the number of unknowns.
inline std::size_t ph_order(std::size_t count, std::size_t b_x) { return count * (b_x + 1) - 1; }

/// Nonzero (l_0, ..., l_m) with deg l_i <= b_x and sum l_i Z_i = 0 mod
/// X^Sigma, Sigma = (m + 1)(b_x + 1) - 1. Deterministic: the kernel vector
/// attached to the first free unknown in the order (i, degree).
template <Field K>
PHSolution<K> ph_approx(const K& k, const std::vector<TruncSeries<typename K::Elem>>& z, std::size_t b_x) {
  if (z.empty()) throw DomainError("no series given");
  const std::size_t m1 = z.size(), w = b_x + 1, sigma = ph_order(m1, b_x);
  for (const auto& s : z)
    if (s.precision() < sigma) throw DomainError("series precision below the approximation order");
  LinearSystem<K> sys(k, m1 * w, 0);
  for (std::size_t t = 0; t < sigma; ++t) {
    std::vector<typename K::Elem> row(m1 * w, k.zero());
    for (std::size_t i = 0; i < m1; ++i)
      for (std::size_t b = 0; b < w && b <= t; ++b) row[i * w + b] = z[i][t - b];
    sys.add_dense_row(row);
  }
  const auto ech = eliminate(std::move(sys));
  ALGDIFF_ASSERT(!ech.free_columns().empty(), "underdetermined system without kernel");
  const auto v = ech.kernel_vector(ech.free_columns().front());
  PHSolution<K> out;
  for (std::size_t i = 0; i < m1; ++i)
    out.ells.emplace_back(k, std::vector<typename K::Elem>(v.begin() + i * w, v.begin() + (i + 1) * w));
  return out;
}

template <Field K>
struct PHAlgebraSolution {
  std::vector<std::vector<AlgElem<K>>> ells;  // coefficient lists of l_i in A[X]
  QuotientAlgebra<K> algebra;                 // the factor algebra actually used
  int restarts = 0;
};

namespace approx_detail {

// Gaussian elimination over K[Y]/(p) with each row stored as n coordinate
// arrays. Returns the split factor when a pivot is a zero divisor.
template <Field K>
class FlatAlgebraSystem {
 public:
  using Elem = typename K::Elem;
  using Ops = linalg_detail::OpsFor<K>;
  using S = typename Ops::S;

  FlatAlgebraSystem(const QuotientAlgebra<K>& a, std::size_t ncols)
      : a_(a), ops_(linalg_detail::make_ops(a.field())), n_(a.degree()), ncols_(ncols) {}

  void add_row(const std::vector<AlgElem<K>>& row) {
    Row r(n_, std::vector<S>(ncols_, ops_.zero()));
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (!row[c].has_parent()) continue;
      const auto& co = row[c].raw();
      for (std::size_t i = 0; i < n_; ++i) r[i][c] = store(co[i]);
    }
    rows_.push_back(std::move(r));
    pending_.push_back(0);
  }

  /// Reduces to echelon form. On a zero-divisor pivot returns its gcd with
  /// the modulus.
  std::optional<UniPoly<K>> eliminate() {
    std::size_t next = 0;  // rows [0, next) are pivot rows
    for (std::size_t c = 0; c < ncols_ && next < rows_.size(); ++c) {
      std::size_t pr = rows_.size();
      for (std::size_t ri = next; ri < rows_.size(); ++ri) {
        reduce_column(rows_[ri], c);
        if (!entry_zero(rows_[ri], c)) {
          pr = ri;
          break;
        }
      }
      if (pr == rows_.size()) {
        free_.push_back(c);
        continue;
      }
      std::swap(rows_[pr], rows_[next]);
      std::swap(pending_[pr], pending_[next]);
      settle(next);
      const AlgElem<K> pv = entry(rows_[next], c);
      const auto inv = pv.invert_or_split();
      if (!inv.inverse) return inv.factor;
      scale_row(rows_[next], *inv.inverse, c);
      for (std::size_t ri = next + 1; ri < rows_.size(); ++ri) {
        reduce_column(rows_[ri], c);
        if (entry_zero(rows_[ri], c)) continue;
        const AlgElem<K> f = -entry(rows_[ri], c);
        axpy_row(ri, rows_[next], f, c);
      }
      pivot_cols_.push_back(c);
      ++next;
    }
    for (std::size_t c = pivot_cols_.empty() ? 0 : pivot_cols_.back() + 1; c < ncols_; ++c)
      if (std::find(free_.begin(), free_.end(), c) == free_.end()) free_.push_back(c);
    std::sort(free_.begin(), free_.end());
    return std::nullopt;
  }

  const std::vector<std::size_t>& free_columns() const { return free_; }

  /// Kernel vector with 1 at free column fc and 0 at the other free columns.
  std::vector<AlgElem<K>> kernel_vector(std::size_t fc) const {
    std::vector<AlgElem<K>> x(ncols_, a_.zero());
    x[fc] = a_.one();
    for (std::size_t t = pivot_cols_.size(); t-- > 0;) {
      const std::size_t c = pivot_cols_[t];
      AlgElem<K> acc = a_.zero();
      for (std::size_t j = c + 1; j < ncols_; ++j) {
        if (x[j].is_zero()) continue;
        const AlgElem<K> e = entry(rows_[t], j);
        if (!e.is_zero()) acc += e * x[j];
      }
      x[c] = -acc;
    }
    return x;
  }

 private:
  using Row = std::vector<std::vector<S>>;  // [coordinate][column]

  S store(const Elem& v) const {
    if constexpr (is_prime_field_v<K>)
      return v.value();
    else
      return v;
  }
  Elem load(const S& v) const {
    if constexpr (is_prime_field_v<K>)
      return Zp::raw(ops_.reduce(v), ops_.p);
    else
      return v;
  }

  void settle(std::size_t ri) {
    if (pending_[ri] == 0) return;
    for (auto& co : rows_[ri])
      for (auto& v : co) v = ops_.reduce(v);
    pending_[ri] = 0;
  }

  void reduce_column(Row& r, std::size_t c) const {
    for (std::size_t i = 0; i < n_; ++i) r[i][c] = ops_.reduce(r[i][c]);
  }

  bool entry_zero(const Row& r, std::size_t c) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!ops_.is_zero(r[i][c])) return false;
    return true;
  }

  AlgElem<K> entry(const Row& r, std::size_t c) const {
    std::vector<Elem> co(n_);
    for (std::size_t i = 0; i < n_; ++i) co[i] = load(r[i][c]);
    return a_.from_poly(UniPoly<K>(a_.field(), std::move(co)));
  }

  // Matrix of multiplication by f in the basis 1, y, ..., y^(n-1):
  // column j holds the coordinates of f * y^j.
  std::vector<std::vector<S>> mult_matrix(const AlgElem<K>& f) const {
    std::vector<std::vector<S>> m(n_, std::vector<S>(n_, ops_.zero()));
    AlgElem<K> col = f;
    const AlgElem<K> y = a_.y();
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& co = col.raw();
      for (std::size_t i = 0; i < n_; ++i) m[i][j] = store(co[i]);
      if (j + 1 < n_) col = col * y;
    }
    return m;
  }

  void scale_row(Row& r, const AlgElem<K>& f, std::size_t from) {
    const auto m = mult_matrix(f);
    Row out(n_, std::vector<S>(ncols_, ops_.zero()));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k)
        if (!ops_.is_zero(m[i][k])) ops_.axpy(out[i].data() + from, r[k].data() + from, ncols_ - from, m[i][k]);
    for (auto& co : out)
      for (auto& v : co) v = ops_.reduce(v);
    r = std::move(out);
  }

  // rows_[ri] += f * piv on columns >= from.
  void axpy_row(std::size_t ri, const Row& piv, const AlgElem<K>& f, std::size_t from) {
    const auto m = mult_matrix(f);
    Row& r = rows_[ri];
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k)
        if (!ops_.is_zero(m[i][k])) ops_.axpy(r[i].data() + from, piv[k].data() + from, ncols_ - from, m[i][k]);
    if (ops_.lazy_limit) {
      pending_[ri] += n_;
      if (pending_[ri] + n_ >= ops_.lazy_limit) settle(ri);
    }
  }

  QuotientAlgebra<K> a_;
  Ops ops_;
  std::size_t n_, ncols_;
  std::vector<Row> rows_;
  std::vector<unsigned> pending_;
  std::vector<std::size_t> pivot_cols_, free_;
};

}  // namespace approx_detail

/// Hermite approximation over A = K[Y]/(p). When a pivot q is a zero
/// divisor with g = gcd(q, p), q vanishes modulo g and is a unit modulo p/g,
/// so the inputs are projected to K[Y]/(p/g) and the solver restarts.
template <Field K>
PHAlgebraSolution<K> ph_approx_algebra(const std::vector<TruncSeries<AlgElem<K>>>& z, std::size_t b_x) {
  if (z.empty()) throw DomainError("no series given");
  std::optional<QuotientAlgebra<K>> alg;
  for (const auto& s : z)
    for (const auto& c : s.coeffs())
      if (c.has_parent()) {
        alg = c.parent();
        break;
      }
  if (!alg) throw DomainError("series carry no algebra");
  const std::size_t m1 = z.size(), w = b_x + 1, sigma = ph_order(m1, b_x);
  for (const auto& s : z)
    if (s.precision() < sigma) throw DomainError("series precision below the approximation order");
  const int max_restarts = alg->degree();
  for (int restarts = 0; restarts <= max_restarts; ++restarts) {
    approx_detail::FlatAlgebraSystem<K> sys(*alg, m1 * w);
    for (std::size_t t = 0; t < sigma; ++t) {
      std::vector<AlgElem<K>> row(m1 * w);
      for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t b = 0; b < w && b <= t; ++b) {
          const auto& c = z[i][t - b];
          row[i * w + b] = c.has_parent() ? c.project(*alg) : c;
        }
      sys.add_row(row);
    }
    const auto split = sys.eliminate();
    if (split) {
      alg = alg->quotient(alg->modulus().exact_div(*split));
      continue;
    }
    ALGDIFF_ASSERT(!sys.free_columns().empty(), "underdetermined system without kernel");
    const auto v = sys.kernel_vector(sys.free_columns().front());
    PHAlgebraSolution<K> out{{}, *alg, restarts};
    for (std::size_t i = 0; i < m1; ++i) out.ells.emplace_back(v.begin() + i * w, v.begin() + (i + 1) * w);
    return out;
  }
  throw InvariantError("zero-divisor splitting did not terminate within deg(p) restarts");
}

}  // namespace algdiff
