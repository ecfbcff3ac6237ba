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

// Cockle's construction of the minimal differential resolvent. With alpha a
// generic root of P, write V_k for the k-th derivative of alpha reduced to a
// polynomial of degree < D_Y in alpha; the first linear dependency
// V_r = A_{r-1} V_{r-1} + ... + A_0 V_0 over K(X) gives the resolvent
// D^r - A_{r-1} D^{r-1} - ... - A_0.
//
// Two backends compute it: exact arithmetic in K(X)[Y]/(P) (small inputs,
// used as the reference), and truncated series in K[[X - a]][Y]/(P) at a
// lucky point a followed by Padé reconstruction of the A_i.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "algdiff/approx.hpp"
#include "algdiff/bipoly.hpp"
#include "algdiff/bounds.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/lift.hpp"
#include "algdiff/linalg.hpp"
#include "algdiff/modular.hpp"
#include "algdiff/random.hpp"
#include "algdiff/ratfunc.hpp"
#include "algdiff/series.hpp"

namespace algdiff {

/// W_1..W_{k_max} with alpha^(k) = W_k(X, alpha) / P_Y(X, alpha)^(2k-1).
template <Field K>
std::vector<BiPoly<K>> wk_sequence(const BiPoly<K>& p, int k_max) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  const auto px = p.dx(), py = p.dy();
  const auto s = py * py.dx() - px * py.dy();
  std::vector<BiPoly<K>> w{-px};
  const i64 dx = p.degree_x(), dy = p.degree_y();
  for (int k = 1; k <= k_max; ++k) {
    const auto& wk = w.back();
    if (!wk.is_zero()) {
      ALGDIFF_ASSERT(wk.degree_x() <= (2 * dx - 1) * k - dx, "W_k exceeds its X-degree bound");
      ALGDIFF_ASSERT(wk.degree_y() <= 2 * (dy - 1) * k - dy + 2, "W_k exceeds its Y-degree bound");
    }
    if (k == k_max) break;
    const auto c = p.field().from_int(2 * k - 1);
    w.push_back((py * wk.dx() - px * wk.dy()) * py - c * (s * wk));
  }
  return w;
}

/// Relation data recorded by the resolvent backends.
template <Field K>
struct CockleTrace {
  int r = 0;
  std::optional<typename K::Elem> lucky_a;
  /// Constant terms of V_0..V_r at the expansion point (series backend).
  std::vector<std::vector<typename K::Elem>> v_at_point;
  /// A_0..A_{r-1} as reduced fractions num/den.
  std::vector<std::pair<UniPoly<K>, UniPoly<K>>> relation;
};

template <Field K>
struct ResolventResult {
  DiffOp<K> op;  // canonical, in d/dX
  CockleTrace<K> trace;
};

namespace resolvent_detail {

template <Field K>
DiffOp<K> clear_denominators(const K& k, const std::vector<std::pair<UniPoly<K>, UniPoly<K>>>& rel) {
  using Poly = UniPoly<K>;
  Poly l = Poly::constant(k, k.one());
  for (const auto& [n, d] : rel) l = l.exact_div(gcd(l, d)) * d;
  std::vector<Poly> c;
  for (const auto& [n, d] : rel) c.push_back(-(n * l.exact_div(d)));
  c.push_back(l);
  return DiffOp<K>(k, OpVar::dx, std::move(c)).canonical();
}

}  // namespace resolvent_detail

/// Reference backend: exact linear algebra over K(X).
template <Field K>
ResolventResult<K> cockle_fraction(const BiPoly<K>& p) {
  using F = RatFuncField<K>;
  using RPoly = UniPoly<F>;
  const K& k = p.field();
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  if (discriminant_y(p).is_zero()) throw HypothesisError("H", "P is not separable in Y");
  const F f(k);
  auto lift_poly = [&](const BiPoly<K>& b) {
    std::vector<RatFunc<K>> c;
    for (int j = 0; j <= b.degree_y(); ++j) c.push_back(f.from_poly(b.coeff_y(j)));
    return RPoly(f, std::move(c));
  };
  const RPoly pp = lift_poly(p);
  const int n = p.degree_y();
  auto reduce = [&](const RPoly& a) { return a % pp; };
  auto d_dx = [&](const RPoly& a) {
    std::vector<RatFunc<K>> c;
    for (const auto& e : a.coeffs()) c.push_back(e.derivative());
    return RPoly(f, std::move(c));
  };
  // V_1 = -P_X / P_Y mod P.
  const auto x = xgcd(lift_poly(p.dy()), pp);
  ALGDIFF_ASSERT(x.g.degree() == 0, "P_Y not invertible modulo a separable P");
  const RPoly inv_py = (f.one() / x.g.lead()) * x.s;
  const RPoly v1 = reduce(-(lift_poly(p.dx()) * inv_py));
  std::vector<RPoly> v{reduce(RPoly::x(f))};

  auto coords = [&](const RPoly& a) {
    std::vector<RatFunc<K>> c(n, f.zero());
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j];
    return c;
  };
  ResolventResult<K> out{DiffOp<K>(k, OpVar::dx, {UniPoly<K>::constant(k, k.one())}), {}};
  if (v[0].is_zero()) return out;  // the only root is 0
  for (int r = 1; r <= n; ++r) {
    const RPoly& last = v.back();
    v.push_back(reduce(d_dx(last) + last.derivative() * v1));
    std::vector<std::vector<RatFunc<K>>> m(n, std::vector<RatFunc<K>>(r + 1, f.zero()));
    for (int i = 0; i <= r; ++i) {
      const auto c = coords(v[i]);
      for (int j = 0; j < n; ++j) m[j][i] = c[j];
    }
    LinearSystem<F> sys(f, r + 1, 0);
    for (const auto& row : m) sys.add_dense_row(row);
    const auto ech = eliminate(std::move(sys));
    if (ech.free_columns().empty()) continue;
    ALGDIFF_ASSERT(ech.free_columns().front() == static_cast<std::size_t>(r), "earlier dependency missed");
    const auto kv = ech.kernel_vector(r);
    out.trace.r = r;
    for (int i = 0; i < r; ++i) {
      const RatFunc<K> a = -kv[i];
      out.trace.relation.emplace_back(a.num(), a.den());
    }
    out.op = resolvent_detail::clear_denominators(k, out.trace.relation);
    return out;
  }
  throw InvariantError("no dependency among V_0..V_{D_Y}");
}

/// Arithmetic in K[[X]][Y]/(Q) for Q monic in Y, elements stored as their
/// D_Y coefficient series.
template <Field K>
class SeriesQuotient {
 public:
  using Elem = typename K::Elem;
  using S = TruncSeries<Elem>;
  using V = std::vector<S>;

  /// Q is P divided by its leading coefficient in Y, expanded to precision w;
  /// requires lc_Y(P)(0) != 0.
  SeriesQuotient(const BiPoly<K>& p, std::size_t w) : k_(p.field()), n_(p.degree_y()), w_(w) {
    const S inv_lc = embed(p.lc_y(), w).inverse();
    for (int j = 0; j < n_; ++j) q_.push_back(embed(p.coeff_y(j), w) * inv_lc);
  }

  int degree() const { return n_; }
  const K& field() const { return k_; }

  S embed(const UniPoly<K>& c, std::size_t w) const {
    std::vector<Elem> v(w, k_.zero());
    for (std::size_t i = 0; i < w && i < c.size(); ++i) v[i] = c[i];
    return S(std::move(v));
  }

  V zero(std::size_t w) const { return V(n_, S(std::vector<Elem>(w, k_.zero()))); }

  V y() const {
    std::vector<S> r(n_ + 1, S(std::vector<Elem>(w_, k_.zero())));
    r[1][0] = k_.one();
    return reduce(std::move(r));
  }

  static std::size_t precision(const V& a) {
    std::size_t w = SIZE_MAX;
    for (const auto& s : a) w = std::min(w, s.precision());
    return w;
  }

  V add(const V& a, const V& b) const {
    V r;
    for (int j = 0; j < n_; ++j) r.push_back(a[j] + b[j]);
    return r;
  }

  V mul(const V& a, const V& b) const {
    const std::size_t w = std::min(precision(a), precision(b));
    std::vector<S> r(2 * n_ - 1, S(std::vector<Elem>(w, k_.zero())));
    for (int i = 0; i < n_; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < n_; ++j) r[i + j] += a[i] * b[j];
    }
    return reduce(std::move(r));
  }

  V neg(const V& a) const {
    V r;
    for (const auto& s : a) r.push_back(-s);
    return r;
  }

  /// Derivative with respect to X of the coefficient series.
  V dx(const V& a) const {
    V r;
    for (const auto& s : a) r.push_back(s.d_dx());
    return r;
  }

  /// Derivative with respect to Y of the representative (degree < D_Y - 1).
  V dy(const V& a) const {
    const std::size_t w = precision(a);
    V r(n_, S(std::vector<Elem>(w, k_.zero())));
    for (int j = 1; j < n_; ++j) r[j - 1] = k_.from_int(j) * a[j].truncate(w);
    return r;
  }

  /// Q_X as an element (derivative of the monic modulus' coefficients).
  V q_dx() const {
    V r;
    for (const auto& s : q_) r.push_back(s.d_dx());
    return r;
  }
  /// Q_Y as an element.
  V q_dy() const {
    V r(n_, S(std::vector<Elem>(w_, k_.zero())));
    for (int j = 1; j < n_; ++j) r[j - 1] = k_.from_int(j) * q_[j];
    r[n_ - 1] = r[n_ - 1] + S([&] {
                  std::vector<Elem> c(w_, k_.zero());
                  c[0] = k_.from_int(n_);
                  return c;
                }());
    return r;
  }

  /// Inverse of an element whose value at X = 0 is a unit of K[Y]/(Q(0, Y)).
  V inverse(const V& a) const {
    const std::size_t w = precision(a);
    std::vector<Elem> a0(n_), m0(n_ + 1);
    for (int j = 0; j < n_; ++j) {
      a0[j] = a[j][0];
      m0[j] = q_[j][0];
    }
    m0[n_] = k_.one();
    const auto x = xgcd(UniPoly<K>(k_, a0), UniPoly<K>(k_, m0));
    if (x.g.degree() != 0) throw ReconstructionError("element not invertible at the expansion point");
    const auto s = (k_.one() / x.g.lead()) * x.s;
    V u = zero(w);
    for (std::size_t j = 0; j < s.size(); ++j) u[j][0] = s[j];
    V two = zero(w);
    two[0][0] = k_.from_int(2);
    for (std::size_t prec = 1; prec < w; prec *= 2) u = mul(u, add(two, neg(mul(a, u))));
    return u;
  }

  /// Constant terms, as a column vector.
  std::vector<Elem> at_zero(const V& a) const {
    std::vector<Elem> c;
    for (const auto& s : a) c.push_back(s.precision() ? s[0] : k_.zero());
    return c;
  }

 private:
  V reduce(std::vector<S> r) const {
    for (std::size_t t = r.size(); t-- > static_cast<std::size_t>(n_);) {
      if (r[t].is_zero()) continue;
      const S c = r[t];
      for (int j = 0; j < n_; ++j) r[t - n_ + j] -= c * q_[j];
    }
    r.resize(n_, S(std::vector<Elem>(w_, k_.zero())));
    return r;
  }

  K k_;
  int n_;
  std::size_t w_;
  std::vector<S> q_;
};

namespace resolvent_detail {

/// V_0..V_count-1 in K[[X]][Y]/(P) at working precision w (P already
/// shifted so the expansion point is 0).
template <Field K>
std::vector<typename SeriesQuotient<K>::V> v_sequence(const BiPoly<K>& p, std::size_t w, int count) {
  SeriesQuotient<K> ring(p, w);
  std::vector<typename SeriesQuotient<K>::V> v{ring.y()};
  if (count <= 1) return v;
  const auto v1 = ring.neg(ring.mul(ring.q_dx(), ring.inverse(ring.q_dy())));
  v.push_back(v1);
  for (int k = 2; k < count; ++k) {
    const auto& last = v.back();
    v.push_back(ring.add(ring.dx(last), ring.mul(ring.dy(last), v1)));
  }
  return v;
}

template <Field K>
std::size_t rank_at_zero(const K& k, const std::vector<typename SeriesQuotient<K>::V>& v, int n) {
  std::vector<std::vector<typename K::Elem>> m(n, std::vector<typename K::Elem>(v.size(), k.zero()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (int j = 0; j < n; ++j) m[j][i] = v[i][j][0];
  return rank(k, m, v.size());
}

}  // namespace resolvent_detail

enum class LuckyMode { probabilistic, deterministic };

template <Field K>
struct LuckyPoint {
  typename K::Elem a;
  int r;
};

/// Rank of V_0(a), ..., V_{D_Y-1}(a) in K[Y]/(P(a, Y)), or -1 when a is not
/// a good point.
template <Field K>
int rank_at_point(const BiPoly<K>& p, const typename K::Elem& a) {
  if (!good_point(p, a)) return -1;
  const auto q = p.shift_x(a);
  const int n = p.degree_y();
  const auto v = resolvent_detail::v_sequence(q, static_cast<std::size_t>(n + 1), n);
  return static_cast<int>(resolvent_detail::rank_at_zero(p.field(), v, n));
}

/// A lucky point and the resolvent order it reveals. Probabilistic mode
/// samples min(5, |K|) good points (uniform over F_p, 0, 1, 2, ... over Q) and
/// keeps the largest rank; deterministic mode scans more points than the
/// degree of the polynomial whose roots contain every unlucky point.
template <Field K>
LuckyPoint<K> find_lucky_point(const BiPoly<K>& p, LuckyMode mode, std::uint64_t seed = 1) {
  const K& k = p.field();
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  const auto disc = discriminant_y(p);
  if (disc.is_zero()) throw HypothesisError("H", "P is not separable in Y");
  const int n = p.degree_y();
  std::optional<LuckyPoint<K>> best;
  auto consider = [&](const typename K::Elem& a) {
    const int rk = rank_at_point(p, a);
    if (rk < 0) return false;
    if (!best || rk > best->r) best = LuckyPoint<K>{a, rk};
    return true;
  };
  if (mode == LuckyMode::probabilistic) {
    std::uint64_t want = 5;
    if constexpr (is_prime_field_v<K>) want = std::min<std::uint64_t>(want, k.modulus());
    std::uint64_t got = 0;
    if constexpr (is_prime_field_v<K>) {
      Rng rng(seed);
      for (std::uint64_t tries = 0; got < want && tries < 64 * want; ++tries)
        if (consider(random_elem(k, rng))) ++got;
    } else {
      for (std::int64_t a = 0; got < want && a < 100000; ++a)
        if (consider(k.from_int(a))) ++got;
    }
    if (!best) throw HypothesisError("H_b", "no good expansion point found among sampled candidates");
    return *best;
  }
  i64 budget = (p.lc_y() * disc).degree();
  i64 max_eta = 0;
  for (int r = 1; r <= n; ++r) max_eta = std::max(max_eta, eta(p.degree_x(), n, r));
  budget += max_eta + 1;
  if constexpr (is_prime_field_v<K>)
    if (k.modulus() <= static_cast<std::uint64_t>(budget))
      throw DomainError("field too small for a deterministic lucky-point search (needs more than " +
                        std::to_string(budget) + " elements)");
  for (i64 a = 0; a < budget; ++a) {
    consider(k.from_int(a));
    if (best && best->r == n) break;
  }
  ALGDIFF_ASSERT(best.has_value(), "no good point among more candidates than bad points");
  return *best;
}

/// Series backend: Cockle's steps over K[[X - a]][Y]/(P) at a lucky point a
/// with the true order r, then Padé reconstruction of each A_i with
/// numerator and denominator degree at most eta. Runs directly in K.
template <Field K>
ResolventResult<K> cockle_series_direct(const BiPoly<K>& p, const typename K::Elem& a, int r) {
  const K& k = p.field();
  using Elem = typename K::Elem;
  using S = TruncSeries<Elem>;
  const int n = p.degree_y();
  if (r < 0 || r > n) throw DomainError("resolvent order outside [0, D_Y]");
  if (!good_point(p, a)) throw ReconstructionError("expansion point is not a good point");
  ResolventResult<K> out{DiffOp<K>(k, OpVar::dx, {UniPoly<K>::constant(k, k.one())}), {}};
  out.trace.r = r;
  out.trace.lucky_a = a;
  if (r == 0) return out;
  const i64 e = eta(p.degree_x(), n, r);
  const std::size_t target = static_cast<std::size_t>(2 * e + 1);
  const std::size_t w = target + static_cast<std::size_t>(r);
  const auto q = p.shift_x(a);
  const auto v = resolvent_detail::v_sequence(q, w, r + 1);
  for (const auto& vi : v) {
    std::vector<Elem> c;
    for (const auto& s : vi) c.push_back(s[0]);
    out.trace.v_at_point.push_back(std::move(c));
  }

  // Pick r rows whose constant-term minor is invertible.
  std::vector<int> rows;
  {
    std::vector<std::vector<Elem>> basis;
    for (int j = 0; j < n && static_cast<int>(rows.size()) < r; ++j) {
      std::vector<std::vector<Elem>> trial = basis;
      std::vector<Elem> row;
      for (int i = 0; i < r; ++i) row.push_back(v[i][j][0]);
      trial.push_back(row);
      if (rank(k, trial, r) == trial.size()) {
        basis = std::move(trial);
        rows.push_back(j);
      }
    }
    if (static_cast<int>(rows.size()) < r)
      throw ReconstructionError("V_0..V_{r-1} dependent at the expansion point");
  }

  // Solve M A = b over K[[X]] by elimination with unit pivots.
  auto entry = [&](int j, int i) { return v[i][j].truncate(target); };
  std::vector<std::vector<S>> m(r, std::vector<S>(r + 1));
  for (int t = 0; t < r; ++t) {
    for (int i = 0; i < r; ++i) m[t][i] = entry(rows[t], i);
    m[t][r] = entry(rows[t], r);
  }
  for (int c = 0; c < r; ++c) {
    int pr = c;
    while (pr < r && is_zero_elem(m[pr][c][0])) ++pr;
    ALGDIFF_ASSERT(pr < r, "singular constant-term minor");
    std::swap(m[pr], m[c]);
    const S inv = m[c][c].inverse();
    for (int j = c; j <= r; ++j) m[c][j] = m[c][j] * inv;
    for (int t = 0; t < r; ++t) {
      if (t == c || m[t][c].is_zero()) continue;
      const S f = m[t][c];
      for (int j = c; j <= r; ++j) m[t][j] -= f * m[c][j];
    }
  }
  std::vector<S> coef(r);
  for (int i = 0; i < r; ++i) coef[i] = m[i][r];

  // The relation must hold on every coordinate, not only the chosen rows.
  for (int j = 0; j < n; ++j) {
    if (std::find(rows.begin(), rows.end(), j) != rows.end()) continue;
    S acc = entry(j, r);
    for (int i = 0; i < r; ++i) acc -= coef[i] * entry(j, i);
    if (!acc.is_zero()) throw ReconstructionError("relation fails on a remaining coordinate; order too small");
  }

  for (int i = 0; i < r; ++i) {
    auto pd = pade(k, coef[i], static_cast<int>(e), static_cast<int>(e));
    const auto g = gcd(pd.num, pd.den);
    auto num = pd.num.exact_div(g), den = pd.den.exact_div(g);
    if (is_zero_elem(den.coeff(0))) throw ReconstructionError("reconstructed coefficient has a pole at the point");
    const auto s = k.one() / den.lead();
    // Back to the original variable: c(X) -> c(X - a).
    out.trace.relation.emplace_back((s * num).shift(-a), (s * den).shift(-a));
  }
  out.op = resolvent_detail::clear_denominators(k, out.trace.relation);
  return out;
}

/// Exact test that L annihilates every root of P. With
/// alpha^(i) = W_i(alpha) / P_Y(alpha)^(2i-1), the sum of c_i alpha^(i)
/// times P_Y(alpha)^(2r-1) is N(X, alpha) for a polynomial N, and L is
/// associated to P iff the pseudo-remainder of N by P in Y vanishes.
template <Field K>
bool annihilates_all_roots(const DiffOp<K>& op, const BiPoly<K>& p) {
  using Poly = UniPoly<K>;
  const K& k = p.field();
  if (op.is_zero()) return true;
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  const DiffOp<K> l = op.to_dx();
  const int r = l.order();
  const auto w = wk_sequence(p, r);
  const auto py = p.dy();
  BiPoly<K> n(k);
  for (int i = 0; i <= r; ++i) {
    if (l.coeffs()[i].is_zero()) continue;
    const BiPoly<K> term = i == 0 ? BiPoly<K>::y(k) * py.pow(static_cast<unsigned>(std::max(2 * r - 1, 0)))
                                  : w[i - 1] * py.pow(static_cast<unsigned>(2 * (r - i)));
    n += BiPoly<K>::from_uni(l.coeffs()[i], true) * term;
  }
  const int dy = p.degree_y();
  std::vector<Poly> c;
  for (int j = 0; j <= n.degree_y(); ++j) c.push_back(n.coeff_y(j));
  std::vector<Poly> pc;
  for (int j = 0; j <= dy; ++j) pc.push_back(p.coeff_y(j));
  for (int j = static_cast<int>(c.size()) - 1; j >= dy; --j) {
    if (c[j].is_zero()) continue;
    const Poly t = c[j];
    for (int i = 0; i <= j; ++i) c[i] = c[i] * pc[dy];
    for (int i = 0; i <= dy; ++i) c[j - dy + i] -= t * pc[i];
    ALGDIFF_ASSERT(c[j].is_zero(), "pseudo-division step left a leading term");
  }
  for (int j = 0; j < dy && j < static_cast<int>(c.size()); ++j)
    if (!c[j].is_zero()) return false;
  return true;
}

namespace resolvent_detail {

inline std::vector<int> coefficient_degrees(const DiffOp<PrimeField>& op) {
  std::vector<int> d;
  for (const auto& c : op.coeffs()) d.push_back(c.degree());
  return d;
}

/// The rational series backend by word-size modular images: each image is
/// the series backend over F_q at a reduced, equally lucky point; the
/// canonical operators are combined by CRT and rational reconstruction
/// until the reconstruction is stable, then certified exactly.
inline ResolventResult<RationalField> cockle_series_modular(const BiPoly<RationalField>& p, const Rational& a,
                                                            int r, int max_primes = 400) {
  const RationalField k;
  PrimeStream primes;
  std::vector<int> shape;
  std::optional<ModularAccumulator> acc;
  std::optional<std::vector<Rational>> prev;
  for (int tries = 0; tries < max_primes; ++tries) {
    const PrimeField f(primes.next());
    const auto pm = reduce_mod(p, f);
    const auto am = reduce_mod(a, f);
    if (!pm || !am || pm->degree_x() != p.degree_x() || pm->degree_y() != p.degree_y()) continue;
    if (rank_at_point(*pm, *am) != r) continue;
    std::optional<DiffOp<PrimeField>> img;
    try {
      img = cockle_series_direct(*pm, *am, r).op;
    } catch (const ReconstructionError&) {
      continue;
    }
    const auto sh = coefficient_degrees(*img);
    auto total = [](const std::vector<int>& v) {
      long t = 0;
      for (int x : v) t += x + 1;
      return t;
    };
    if (shape.empty() || (sh != shape && total(sh) > total(shape))) {
      shape = sh;
      acc.emplace(static_cast<std::size_t>(total(sh)));
      prev.reset();
    } else if (sh != shape) {
      continue;
    }
    std::vector<std::uint64_t> flat;
    for (std::size_t i = 0; i < shape.size(); ++i)
      for (int j = 0; j <= shape[i]; ++j) flat.push_back(img->coeffs()[i].coeff(j).value());
    acc->add(flat, f.modulus());
    auto rec = acc->reconstruct();
    if (rec && prev && *rec == *prev) {
      std::vector<UniPoly<RationalField>> cs;
      std::size_t pos = 0;
      for (int d : shape) {
        cs.emplace_back(k, std::vector<Rational>(rec->begin() + static_cast<std::ptrdiff_t>(pos),
                                                 rec->begin() + static_cast<std::ptrdiff_t>(pos + d + 1)));
        pos += static_cast<std::size_t>(d + 1);
      }
      DiffOp<RationalField> op(k, OpVar::dx, std::move(cs));
      if (op.order() == r && annihilates_all_roots(op, p)) {
        ResolventResult<RationalField> out{op.canonical(), {}};
        out.trace.r = r;
        out.trace.lucky_a = a;
        const auto v = v_sequence(p.shift_x(a), static_cast<std::size_t>(r + 1), r + 1);
        for (const auto& vi : v) {
          std::vector<Rational> c;
          for (const auto& s : vi) c.push_back(s[0]);
          out.trace.v_at_point.push_back(std::move(c));
        }
        const auto& lead = out.op.leading();
        for (int i = 0; i < r; ++i) {
          auto num = -out.op.coeffs()[i];
          const auto g = gcd(num, lead);
          auto nn = num.exact_div(g), dd = lead.exact_div(g);
          const Rational s = Rational(1) / dd.lead();
          out.trace.relation.emplace_back(s * nn, s * dd);
        }
        return out;
      }
    }
    prev = std::move(rec);
  }
  throw ReconstructionError("modular images of the resolvent did not stabilize");
}

}  // namespace resolvent_detail

/// Series backend. Over a prime field it runs directly; over Q the same
/// computation runs modulo word-size primes and the result is reconstructed
/// and certified exactly, which avoids the growth of rational series
/// coefficients.
template <Field K>
ResolventResult<K> cockle_series(const BiPoly<K>& p, const typename K::Elem& a, int r) {
  if constexpr (std::is_same_v<K, RationalField>) {
    if (r == 0) return cockle_series_direct(p, a, r);
    if (!good_point(p, a)) throw ReconstructionError("expansion point is not a good point");
    return resolvent_detail::cockle_series_modular(p, a, r);
  } else {
    return cockle_series_direct(p, a, r);
  }
}

enum class ResolventMethod { series, fraction };

/// Minimal resolvent with the chosen backend, in the requested operator
/// variable. The series backend retries with a deterministic lucky point when
/// reconstruction fails at the sampled one.
template <Field K>
ResolventResult<K> resolvent(const BiPoly<K>& p, ResolventMethod method = ResolventMethod::series,
                             OpVar var = OpVar::dx, std::uint64_t seed = 1) {
  ResolventResult<K> res = [&] {
    if (method == ResolventMethod::fraction) return cockle_fraction(p);
    const auto lp = find_lucky_point(p, LuckyMode::probabilistic, seed);
    try {
      return cockle_series(p, lp.a, lp.r);
    } catch (const ReconstructionError&) {
      const auto dp = find_lucky_point(p, LuckyMode::deterministic);
      return cockle_series(p, dp.a, dp.r);
    }
  }();
  if (var == OpVar::theta) res.op = res.op.to_theta().canonical();
  return res;
}

}  // namespace algdiff
