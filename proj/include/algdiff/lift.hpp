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

// Newton-Hensel lifting of power-series roots of P(X, Y), either one
// K-rational root or all conjugate roots at once as a single series over the
// quotient algebra K[Y]/(P(0, Y)).

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "algdiff/algebra.hpp"
#include "algdiff/bipoly.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/series.hpp"

namespace algdiff {

/// Maps base-field scalars into a series coefficient ring.
template <Field K>
struct ScalarEmbed {
  K k;
  typename K::Elem operator()(const typename K::Elem& c) const { return c; }
  typename K::Elem one() const { return k.one(); }
};

template <Field K>
struct AlgebraEmbed {
  QuotientAlgebra<K> a;
  AlgElem<K> operator()(const typename K::Elem& c) const { return a.from_scalar(c); }
  AlgElem<K> one() const { return a.one(); }
};

/// A polynomial in X viewed as a series over the coefficient ring.
template <Field K, class Emb>
auto embed_series(const UniPoly<K>& c, std::size_t precision, const Emb& emb) {
  using R = decltype(emb(c.field().zero()));
  std::vector<R> v(precision);
  for (std::size_t i = 0; i < precision && i < c.size(); ++i) v[i] = emb(c[i]);
  return TruncSeries<R>(std::move(v));
}

/// P(X, f(X)) mod X^precision(f), by Horner's rule in Y.
template <Field K, class R, class Emb>
TruncSeries<R> eval_at_series(const BiPoly<K>& p, const TruncSeries<R>& f, const Emb& emb) {
  const std::size_t n = f.precision();
  if (p.is_zero()) return TruncSeries<R>(std::vector<R>(n));
  TruncSeries<R> acc = embed_series(p.coeff_y(p.degree_y()), n, emb);
  for (int j = p.degree_y() - 1; j >= 0; --j) acc = acc * f + embed_series(p.coeff_y(j), n, emb);
  return acc;
}

/// Smallest nonnegative integer a (scanning at most `budget` candidates)
/// with lc_Y(P)(a) != 0 and P(a, Y) squarefree.
template <Field K>
std::optional<std::int64_t> find_good_shift(const BiPoly<K>& p, std::int64_t budget = 1000) {
  const K& k = p.field();
  std::int64_t limit = budget;
  if constexpr (is_prime_field_v<K>)
    limit = std::min<std::int64_t>(budget, static_cast<std::int64_t>(std::min<std::uint64_t>(k.modulus(), INT64_MAX)));
  for (std::int64_t a = 0; a < limit; ++a)
    if (good_point(p, k.from_int(a))) return a;
  return std::nullopt;
}

/// Throws HypothesisError("H_b", ...) unless P(0, Y) keeps degree D_Y and
/// is squarefree. The message names a repairing shift when one is found.
template <Field K>
void require_good_at_zero(const BiPoly<K>& p) {
  const K& k = p.field();
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  if (good_point(p, k.zero())) return;
  std::string what = is_zero_elem(p.lc_y()(k.zero())) ? "leading coefficient in Y vanishes at X=0"
                                                       : "discriminant vanishes at X=0";
  const auto a = find_good_shift(p);
  throw HypothesisError("H_b", what, a ? std::optional<std::string>(std::to_string(*a)) : std::nullopt);
}

template <Field K, class R>
struct LiftedRoot {
  TruncSeries<R> series;
  BiPoly<K> poly;
  typename K::Elem basepoint;  // series is in powers of (X - basepoint)
};

namespace lift_detail {

// Doubles the precision of f (a root mod X^k) up to n, carrying g, an
// approximation of 1/P_Y(X, f) mod X^k.
template <Field K, class R, class Emb>
TruncSeries<R> newton_loop(const BiPoly<K>& p, const BiPoly<K>& py, TruncSeries<R> f, TruncSeries<R> g,
                           std::size_t n, const Emb& emb) {
  std::size_t k = f.precision();
  while (k < n) {
    const std::size_t m = std::min(2 * k, n);
    auto fm = TruncSeries<R>(f.coeffs(), m);
    const auto defect = eval_at_series(p, fm, emb);
    // defect = O(X^k); the correction only needs g mod X^(m-k).
    auto corr = TruncSeries<R>(defect.coeffs(), m) * TruncSeries<R>(g.coeffs(), m);
    fm -= corr;
    if (m < n) {
      const auto d = eval_at_series(py, fm, emb);
      auto gm = TruncSeries<R>(g.coeffs(), m);
      auto e = d * gm;  // 1 + O(X^k)
      std::vector<R> one(m);
      one[0] = emb.one();
      gm = gm + gm * (TruncSeries<R>(std::move(one)) - e);
      g = std::move(gm);
    }
    f = std::move(fm);
    k = m;
  }
  return f;
}

}  // namespace lift_detail

/// The unique series root alpha in K[[X]] with alpha(0) = y0.
template <Field K>
LiftedRoot<K, typename K::Elem> lift_scalar_root(const BiPoly<K>& p, const typename K::Elem& y0,
                                                std::size_t precision) {
  const K& k = p.field();
  if (precision < 1) throw DomainError("precision must be at least 1");
  const auto p0 = p.eval_x(k.zero());
  const auto py = p.dy();
  if (!is_zero_elem(p0(y0))) throw DomainError(k.to_string(y0) + " is not a root of P(0, Y)");
  const auto d0 = py.eval_x(k.zero())(y0);
  if (is_zero_elem(d0)) throw DomainError(k.to_string(y0) + " is not a simple root of P(0, Y)");
  ScalarEmbed<K> emb{k};
  using R = typename K::Elem;
  TruncSeries<R> f(std::vector<R>{y0}), g(std::vector<R>{k.one() / d0});
  return {lift_detail::newton_loop(p, py, std::move(f), std::move(g), precision, emb), p, k.zero()};
}

/// The series phi over A = K[Y]/(P(0, Y)) with phi(0) = y and P(X, phi) = 0,
/// which specializes to every root of P at once.
template <Field K>
LiftedRoot<K, AlgElem<K>> newton_lift(const BiPoly<K>& p, std::size_t precision) {
  if (precision < 1) throw DomainError("precision must be at least 1");
  require_good_at_zero(p);
  const K& k = p.field();
  QuotientAlgebra<K> alg(p.eval_x(k.zero()));
  AlgebraEmbed<K> emb{alg};
  const auto py = p.dy();
  const AlgElem<K> y = alg.y();
  const AlgElem<K> d0 = alg.from_poly(py.eval_x(k.zero()));
  const auto inv0 = d0.invert_or_split();
  ALGDIFF_ASSERT(inv0.inverse.has_value(), "P_Y(0, y) is not invertible for squarefree P(0, Y)");
  TruncSeries<AlgElem<K>> f(std::vector<AlgElem<K>>{y}), g(std::vector<AlgElem<K>>{*inv0.inverse});
  return {lift_detail::newton_loop(p, py, std::move(f), std::move(g), precision, emb), p, k.zero()};
}

/// Continues an existing lift to a higher precision.
template <Field K, class R, class Emb>
TruncSeries<R> extend_lift(const BiPoly<K>& p, const TruncSeries<R>& f, std::size_t precision, const Emb& emb) {
  if (precision <= f.precision()) return f.truncate(precision);
  const auto py = p.dy();
  const auto g = eval_at_series(py, f, emb).inverse();
  return lift_detail::newton_loop(p, py, f, g, precision, emb);
}

}  // namespace algdiff
