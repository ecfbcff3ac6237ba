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


// Recurrences for the coefficients of series annihilated by a differential
// operator, and fast expansion of algebraic series by unrolling them.
//
// For L = sum_j c_j(X) theta^j with c_j = sum_a c_ja X^a, the coefficient of
// X^n in L(u) gives sum_{a,j} c_ja (n - a)^j u_(n-a) = 0. With
// q_a(m) = sum_j c_ja m^j and a in [a_min, a_max] this becomes
//   r_0(n) u_n + ... + r_s(n) u_(n+s) = 0,  r_i(n) = q_(a_max - i)(n + i),
// of order s = a_max - a_min.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algdiff/algtodiff.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/lift.hpp"
#include "algdiff/resolvent.hpp"
#include "algdiff/unipoly.hpp"

namespace algdiff {

template <Field K>
struct Recurrence {
  K k;
  std::vector<UniPoly<K>> r;  // r_0 .. r_s as polynomials in n

  int order() const { return static_cast<int>(r.size()) - 1; }
  const UniPoly<K>& leading() const { return r.back(); }
  FieldSpec field() const { return k.spec(); }

  friend bool operator==(const Recurrence& a, const Recurrence& b) { return a.r == b.r; }

  /// sum_i r_i(n) u_(n+i) for one index n.
  template <class R>
  R residual(const std::vector<R>& u, std::int64_t n) const {
    R acc = k.zero() * u.at(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < r.size(); ++i) acc += r[i](k.from_int(n)) * u.at(static_cast<std::size_t>(n) + i);
    return acc;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + r[i].to_string("n") + ")*u(n" + (i ? "+" + std::to_string(i) : "") + ")";
    }
    return s + " = 0";
  }
};

namespace rec_detail {

// Removes the scalar content: over Q the coefficients become coprime integers
// with a positive leading coefficient of r_s, over F_p r_s becomes monic.
template <Field K>
void normalize(const K& k, std::vector<UniPoly<K>>& r) {
  if constexpr (is_prime_field_v<K>) {
    const auto s = k.one() / r.back().lead();
    for (auto& c : r) c = s * c;
  } else {
    Integer l = 1, g = 0;
    for (const auto& c : r)
      for (const auto& v : c.coeffs()) {
        const Integer d = boost::multiprecision::denominator(v);
        l = l / boost::multiprecision::gcd(l, d) * d;
      }
    for (const auto& c : r)
      for (const auto& v : c.coeffs()) g = boost::multiprecision::gcd(g, Integer(boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v))));
    Rational s(l, g);
    if (r.back().lead() < 0) s = -s;
    for (auto& c : r) c = s * c;
  }
}

}  // namespace rec_detail

/// Recurrence satisfied for all n >= 0 by the coefficients of every power
/// series solution of L. A d/dX operator is first moved to theta form.
/// Coefficients are only scaled, never divided by a common polynomial factor,
/// since that would drop the relation at the factor's integer roots.
template <Field K>
Recurrence<K> diffop_to_recurrence(const DiffOp<K>& op) {
  if (op.is_zero()) throw DomainError("the zero operator has no recurrence");
  const DiffOp<K> th = op.to_theta();
  const K& k = th.field();
  const auto& c = th.coeffs();
  std::size_t a_min = SIZE_MAX, a_max = 0;
  for (const auto& cj : c) {
    if (cj.is_zero()) continue;
    a_min = std::min(a_min, cj.valuation());
    a_max = std::max(a_max, static_cast<std::size_t>(cj.degree()));
  }
  std::vector<UniPoly<K>> r;
  for (std::size_t i = 0; i <= a_max - a_min; ++i) {
    const std::size_t a = a_max - i;
    std::vector<typename K::Elem> q;
    for (const auto& cj : c) q.push_back(cj.coeff(a));
    r.push_back(UniPoly<K>(k, std::move(q)).shift(k.from_int(static_cast<std::int64_t>(i))));
  }
  rec_detail::normalize(k, r);
  return {k, std::move(r)};
}

namespace rec_detail {

inline int sign_at(const UniPoly<RationalField>& f, const Rational& x) {
  const Rational v = f(x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline int sturm_variations(const std::vector<UniPoly<RationalField>>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& s : chain) {
    const int v = sign_at(s, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace rec_detail

/// Largest integer n >= 0 with r(n) = 0, or -1. Over Q the real roots are
/// isolated with a Sturm sequence on [0, Cauchy bound] and only integer
/// candidates are tested; over F_p integer indices alias modulo p, so -1 is
/// returned and the unrolling guards every index instead.
template <Field K>
std::int64_t largest_nonneg_int_root(const UniPoly<K>& r) {
  if (r.is_zero()) throw DomainError("zero leading recurrence coefficient");
  if constexpr (is_prime_field_v<K>) {
    return -1;
  } else {
    namespace mp = boost::multiprecision;
    if (r.degree() == 0) return -1;
    const UniPoly<RationalField> s = r.exact_div(gcd(r, r.derivative()));
    std::vector<UniPoly<RationalField>> chain{s, s.derivative()};
    while (chain.back().degree() > 0) {
      const auto rem = chain[chain.size() - 2] % chain.back();
      if (rem.is_zero()) break;
      chain.push_back(-rem);
    }
    // Cauchy bound: every root has absolute value below 1 + max |s_i / lc|.
    Rational bound = 0;
    for (int i = 0; i < s.degree(); ++i) bound = std::max(bound, Rational(abs(s[i] / s.lead())));
    const Integer top = Integer(mp::numerator(bound) / mp::denominator(bound)) + 2;
    // A rational root has a denominator dividing the leading coefficient of
    // the integer-cleared polynomial, so points k + 1/(|lc| + 1) never vanish.
    Integer l = 1;
    for (const auto& v : s.coeffs()) l = l / mp::gcd(l, mp::denominator(v)) * mp::denominator(v);
    const Integer off = abs(Integer(mp::numerator(s.lead() * l))) + 1;
    auto endpoint = [&](const Integer& kk) { return Rational(kk) + Rational(Integer(1), off); };
    // Largest integer root in (lo, hi], right half first.
    std::function<std::int64_t(const Integer&, const Integer&)> search = [&](const Integer& lo, const Integer& hi) {
      const int count =
          rec_detail::sturm_variations(chain, endpoint(lo)) - rec_detail::sturm_variations(chain, endpoint(hi));
      if (count == 0) return std::int64_t{-1};
      if (hi - lo == 1) return is_zero(r(Rational(hi))) ? static_cast<std::int64_t>(hi) : std::int64_t{-1};
      const Integer mid = (lo + hi) / 2;
      const auto right = search(mid, hi);
      return right >= 0 ? right : search(lo, mid);
    };
    return search(Integer(-1), top);
  }
}

/// r(start), ..., r(start + count - 1). Seeds deg(r) + 1 values by Horner's
/// rule and propagates the forward-difference table, one addition per
/// difference order and value.
template <Field K>
std::vector<typename K::Elem> eval_progression(const UniPoly<K>& r, std::int64_t start, std::size_t count) {
  if (count == 0) throw DomainError("progression must have at least one term");
  const K& k = r.field();
  std::vector<typename K::Elem> out;
  out.reserve(count);
  if (r.is_zero()) {
    out.assign(count, k.zero());
    return out;
  }
  const std::size_t d = static_cast<std::size_t>(r.degree());
  if (count <= d + 1) {
    for (std::size_t t = 0; t < count; ++t) out.push_back(r(k.from_int(start + static_cast<std::int64_t>(t))));
    return out;
  }
  std::vector<typename K::Elem> diff;
  for (std::size_t t = 0; t <= d; ++t) diff.push_back(r(k.from_int(start + static_cast<std::int64_t>(t))));
  for (std::size_t lvl = 1; lvl <= d; ++lvl)
    for (std::size_t t = d; t >= lvl; --t) diff[t] -= diff[t - 1];
  for (std::size_t t = 0; t < count; ++t) {
    out.push_back(diff[0]);
    for (std::size_t lvl = 0; lvl < d; ++lvl) diff[lvl] += diff[lvl + 1];
  }
  return out;
}

template <Field K, class R>
struct ExpansionPlan {
  Recurrence<K> rec;
  std::int64_t rho = -1;
  std::vector<R> initial;  // u_0 .. at least u_(rho + s)
  std::size_t N = 0;
};

/// Supplies the true coefficients prefix.size() .. upto - 1 when the
/// leading recurrence coefficient vanishes at an index.
template <class R>
using Patcher = std::function<std::vector<R>(const std::vector<R>& prefix, std::size_t upto)>;

struct UnrollStats {
  double seconds = 0;        // excluding patches
  double patch_seconds = 0;
  int patches = 0;
};

/// Unrolls the plan to N coefficients: u_(n+s) = -(sum_(i<s) r_i(n) u_(n+i)) / r_s(n).
template <Field K, class R>
std::vector<R> unroll(const ExpansionPlan<K, R>& plan, const Patcher<R>* patch = nullptr,
                      UnrollStats* stats = nullptr) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  double patch_time = 0;
  int patches = 0;
  const K& k = plan.rec.k;
  const std::size_t s = static_cast<std::size_t>(plan.rec.order());
  const std::size_t need = static_cast<std::size_t>(std::max<std::int64_t>(plan.rho, -1) + 1) + s;
  std::vector<R> u(plan.initial.begin(), plan.initial.begin() + std::min(plan.initial.size(), plan.N));
  if (u.size() < std::min(need, plan.N) || u.empty())
    throw DomainError("initial segment has " + std::to_string(u.size()) + " terms, at least " +
                      std::to_string(std::max<std::size_t>(need, 1)) + " are required");
  u.reserve(plan.N);
  const std::size_t t0 = u.size();
  if (t0 < plan.N) {
    const std::size_t m0 = t0 - s, count = plan.N - t0;
    std::vector<std::vector<typename K::Elem>> vals;
    for (const auto& ri : plan.rec.r) vals.push_back(eval_progression(ri, static_cast<std::int64_t>(m0), count));
    const R zero = k.zero() * u.front();
    for (std::size_t step = 0; step < count; ++step) {
      const std::size_t t = m0 + step + s;
      if (t < u.size()) continue;
      const auto& lead = vals[s][step];
      if (is_zero_elem(lead)) {
        if (!patch || !*patch)
          throw ReconstructionError("leading recurrence coefficient vanishes at n=" + std::to_string(m0 + step) +
                                    " and no series is available to patch the gap");
        const auto tp = clock::now();
        const std::size_t upto = std::min(plan.N, t + std::max<std::size_t>(s + 1, 64));
        auto more = (*patch)(u, upto);
        ALGDIFF_ASSERT(more.size() == upto - t, "patch returned the wrong number of terms");
        for (auto& v : more) u.push_back(std::move(v));
        patch_time += std::chrono::duration<double>(clock::now() - tp).count();
        ++patches;
        continue;
      }
      R acc = zero;
      const std::size_t m = m0 + step;
      for (std::size_t i = 0; i < s; ++i)
        if (!is_zero_elem(vals[i][step])) acc += vals[i][step] * u[m + i];
      u.push_back((-(k.one() / lead)) * acc);
    }
  }
  if (stats) {
    stats->patch_seconds = patch_time;
    stats->patches = patches;
    stats->seconds = std::chrono::duration<double>(clock::now() - t_start).count() - patch_time;
  }
  return u;
}

enum class ExpandVia { recurrence, newton };
enum class OperatorSource { resolvent, algtodiff };

template <Field K>
struct ExpandOptions {
  ExpandVia via = ExpandVia::recurrence;
  OperatorSource source = OperatorSource::resolvent;
  std::optional<DiffOp<K>> op;  // used instead of computing one
};

template <Field K, class R>
struct Expansion {
  std::vector<R> coeffs;
  std::optional<Recurrence<K>> rec;
  std::int64_t rho = -1;
  double operator_seconds = 0;  // operator construction and conversion
  double initial_seconds = 0;   // Newton lifting of the initial segment
  double unroll_seconds = 0;
  double patch_seconds = 0;
  int patches = 0;
};

/// Operator used for expansion by recurrence: the minimal resolvent, or the
/// second AlgToDiff preset in theta form.
template <Field K>
DiffOp<K> expansion_operator(const BiPoly<K>& p, OperatorSource source) {
  if (source == OperatorSource::resolvent) return resolvent(p, ResolventMethod::series, OpVar::theta).op;
  const auto pr = preset_params(p, 2, OpVar::theta);
  return alg_to_diff(p, pr.B_X, pr.B_d, OpVar::theta).op;
}

namespace rec_detail {

template <Field K, class R, class Emb, class Lift>
Expansion<K, R> expand_impl(const BiPoly<K>& p, std::size_t n, const ExpandOptions<K>& opts, const Emb& emb,
                            Lift lift) {
  using clock = std::chrono::steady_clock;
  Expansion<K, R> out;
  if (n == 0) return out;
  if (opts.via == ExpandVia::newton) {
    const auto t = clock::now();
    out.coeffs = lift(n).coeffs();
    out.initial_seconds = std::chrono::duration<double>(clock::now() - t).count();
    return out;
  }
  auto t = clock::now();
  const DiffOp<K> op = opts.op ? *opts.op : expansion_operator(p, opts.source);
  auto rec = diffop_to_recurrence(op);
  const std::int64_t rho = largest_nonneg_int_root(rec.leading());
  out.operator_seconds = std::chrono::duration<double>(clock::now() - t).count();
  const std::size_t init = std::min<std::size_t>(
      n, std::max<std::size_t>(1, static_cast<std::size_t>(rho + 1) + static_cast<std::size_t>(rec.order())));
  t = clock::now();
  auto seg = lift(init).coeffs();
  out.initial_seconds = std::chrono::duration<double>(clock::now() - t).count();
  ExpansionPlan<K, R> plan{rec, rho, std::move(seg), n};
  Patcher<R> patch = [&](const std::vector<R>& prefix, std::size_t upto) {
    const auto ext = extend_lift(p, TruncSeries<R>(prefix), upto, emb);
    return std::vector<R>(ext.coeffs().begin() + static_cast<std::ptrdiff_t>(prefix.size()), ext.coeffs().end());
  };
  UnrollStats st;
  out.coeffs = unroll(plan, &patch, &st);
  out.unroll_seconds = st.seconds;
  out.patch_seconds = st.patch_seconds;
  out.patches = st.patches;
  out.rec = std::move(rec);
  out.rho = rho;
  return out;
}

}  // namespace rec_detail

/// First n coefficients of the root with constant term y0 (a simple root of
/// P(0, Y)).
template <Field K>
Expansion<K, typename K::Elem> expand_scalar(const BiPoly<K>& p, const typename K::Elem& y0, std::size_t n,
                                             const ExpandOptions<K>& opts = {}) {
  ScalarEmbed<K> emb{p.field()};
  return rec_detail::expand_impl<K, typename K::Elem>(
      p, n, opts, emb, [&](std::size_t prec) { return lift_scalar_root(p, y0, prec).series; });
}

/// First n coefficients of the conjugate-root series over K[Y]/(P(0, Y)).
template <Field K>
Expansion<K, AlgElem<K>> expand_algebra(const BiPoly<K>& p, std::size_t n, const ExpandOptions<K>& opts = {}) {
  require_good_at_zero(p);
  const QuotientAlgebra<K> alg(p.eval_x(p.field().zero()));
  AlgebraEmbed<K> emb{alg};
  return rec_detail::expand_impl<K, AlgElem<K>>(p, n, opts, emb,
                                                [&](std::size_t prec) { return newton_lift(p, prec).series; });
}

}  // namespace algdiff
