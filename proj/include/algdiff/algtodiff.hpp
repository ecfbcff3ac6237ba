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


// Operators associated to P from Hermite-Pade approximation of the
// conjugate-root series phi over A = K[Y]/(P(0, Y)) and its derivatives.
// The deterministic variant works over A and splits A on zero divisors; the
// probabilistic variant approximates one random K-combination of the
// coordinates of phi over K.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "algdiff/approx.hpp"
#include "algdiff/bounds.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/lift.hpp"
#include "algdiff/random.hpp"
#include "algdiff/telescope.hpp"

namespace algdiff {

enum class AlgToDiffMode { deterministic, probabilistic, heuristic };

inline const char* mode_name(AlgToDiffMode m) {
  switch (m) {
    case AlgToDiffMode::deterministic:
      return "deterministic";
    case AlgToDiffMode::probabilistic:
      return "probabilistic";
    default:
      return "heuristic";
  }
}

struct AlgToDiffParams {
  i64 B_X = 0;
  i64 B_d = 0;
  OpVar var = OpVar::theta;
};

template <Field K>
struct AlgToDiffResult {
  DiffOp<K> op;
  bool verified = false;
  AlgToDiffParams params;
  AlgToDiffMode mode = AlgToDiffMode::deterministic;
  UniPoly<K> algebra_factor;  // defining polynomial of the algebra actually used
  int restarts = 0;
};

enum class HeuristicFlavor { thm2, thm3 };

/// Tighter (B_X, B_d) from the telescoping bounds; correct in practice but
/// without a guarantee, so results need certification.
template <Field K>
AlgToDiffParams heuristic_params(const BiPoly<K>& p, HeuristicFlavor flavor, OpVar var = OpVar::theta) {
  const auto prof = DegreeProfile::of(p);
  if (flavor == HeuristicFlavor::thm2)
    return {3 * prof.D_X * prof.D_Y + 6 * prof.D_Y, 6 * prof.D_Y, var};
  const i64 b = thm3_bound(prof);
  return {b, b, var};
}

namespace algtodiff_detail {

template <Field K>
void require_h_prime(const BiPoly<K>& p) {
  if (p.degree_y() < 2)
    throw HypothesisError("H'", "degree in Y is " + std::to_string(p.degree_y()) + ", at least 2 is required");
}

// phi, d phi, ..., d^B_d phi truncated to the approximation order.
template <class R>
std::vector<TruncSeries<R>> derivative_family(TruncSeries<R> f, std::size_t count, std::size_t order, OpVar var) {
  std::vector<TruncSeries<R>> z;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) f = var == OpVar::dx ? f.d_dx() : f.theta();
    z.push_back(f.truncate(order));
  }
  return z;
}

}  // namespace algtodiff_detail

/// Deterministic AlgToDiff. When Sigma >= sigma the output is associated to P
/// by construction (verified = true); `certify` additionally runs
/// verify_associated and reports its verdict instead.
template <Field K>
AlgToDiffResult<K> alg_to_diff(const BiPoly<K>& p, i64 b_x, i64 b_d, OpVar var = OpVar::theta,
                               bool certify = false) {
  algtodiff_detail::require_h_prime(p);
  const K& k = p.field();
  const BoundSet bs = bound_set(p.degree_x(), p.degree_y(), b_x, b_d);
  const std::size_t order = static_cast<std::size_t>(bs.Sigma);
  const auto phi = newton_lift(p, order + static_cast<std::size_t>(b_d));
  const auto z = algtodiff_detail::derivative_family(phi.series, static_cast<std::size_t>(b_d) + 1, order, var);
  const auto sol = ph_approx_algebra(z, static_cast<std::size_t>(b_x));

  // l_i = sum_c L_{c,i} y^c over the final algebra; return the first L_c != 0.
  const int n = sol.algebra.degree();
  std::optional<DiffOp<K>> found;
  for (int c = 0; c < n && !found; ++c) {
    std::vector<UniPoly<K>> coeffs;
    for (const auto& ell : sol.ells) {
      std::vector<typename K::Elem> v;
      for (const auto& e : ell) v.push_back(e.has_parent() ? e.decompose()[c] : k.zero());
      coeffs.emplace_back(k, std::move(v));
    }
    DiffOp<K> l(k, var, std::move(coeffs));
    if (!l.is_zero()) found = l.canonical();
  }
  ALGDIFF_ASSERT(found.has_value(), "Hermite-Pade solution has no nonzero component");
  ALGDIFF_ASSERT(found->order() <= b_d && found->degree_x() <= b_x, "operator exceeds the requested bounds");
  AlgToDiffResult<K> out{*found, bs.Sigma >= bs.sigma, {b_x, b_d, var}, AlgToDiffMode::deterministic,
                         sol.algebra.modulus(), sol.restarts};
  if (certify) out.verified = verify_associated(out.op, p);
  return out;
}

/// AlgToDiffP: Z_0 = sum a_c phi_c for random nonzero weights a_c, then
/// Hermite-Pade approximation over K. Always certified explicitly.
template <Field K>
AlgToDiffResult<K> alg_to_diff_prob(const BiPoly<K>& p, i64 b_x, i64 b_d, OpVar var = OpVar::theta,
                                    std::uint64_t seed = 1, bool certify = true) {
  algtodiff_detail::require_h_prime(p);
  const K& k = p.field();
  if constexpr (is_prime_field_v<K>)
    if (k.modulus() <= 2) throw DomainError("field too small to draw independent nonzero weights");
  const BoundSet bs = bound_set(p.degree_x(), p.degree_y(), b_x, b_d);
  const std::size_t order = static_cast<std::size_t>(bs.Sigma);
  const auto phi = newton_lift(p, order + static_cast<std::size_t>(b_d));
  const int n = p.degree_y();
  Rng rng(seed);
  std::vector<typename K::Elem> w;
  for (int c = 0; c < n; ++c) w.push_back(random_nonzero(k, rng));
  std::vector<typename K::Elem> z0;
  z0.reserve(phi.series.precision());
  for (std::size_t t = 0; t < phi.series.precision(); ++t) {
    const auto coords = phi.series[t].decompose();
    auto acc = k.zero();
    for (int c = 0; c < n; ++c) acc += w[c] * coords[c];
    z0.push_back(acc);
  }
  const auto z = algtodiff_detail::derivative_family(TruncSeries<typename K::Elem>(std::move(z0)),
                                                     static_cast<std::size_t>(b_d) + 1, order, var);
  auto sol = ph_approx(k, z, static_cast<std::size_t>(b_x));
  DiffOp<K> l = DiffOp<K>(k, var, std::move(sol.ells)).canonical();
  AlgToDiffResult<K> out{l, false, {b_x, b_d, var}, AlgToDiffMode::probabilistic, phi.series[0].parent().modulus(), 0};
  if (certify) out.verified = verify_associated(out.op, p);
  return out;
}

/// Heuristic parameterizations. verified stays false unless certified.
template <Field K>
AlgToDiffResult<K> alg_to_diff_heuristic(const BiPoly<K>& p, HeuristicFlavor flavor, OpVar var = OpVar::theta,
                                         bool probabilistic = true, std::uint64_t seed = 1, bool certify = true) {
  const auto hp = heuristic_params(p, flavor, var);
  auto r = probabilistic ? alg_to_diff_prob(p, hp.B_X, hp.B_d, var, seed, false)
                         : alg_to_diff(p, hp.B_X, hp.B_d, var, false);
  r.mode = AlgToDiffMode::heuristic;
  r.verified = certify ? verify_associated(r.op, p) : false;
  return r;
}

/// The three parameterizations that guarantee a certified output:
/// preset 1, 2, 3 in the order (4 D_X D_Y^2, D_Y), (5 D_X D_Y, 5 D_Y), (B, B).
template <Field K>
AlgToDiffParams preset_params(const BiPoly<K>& p, int preset, OpVar var = OpVar::theta) {
  if (preset < 1 || preset > 3) throw DomainError("preset must be 1, 2 or 3");
  const auto ps = thm4_presets(p.degree_x(), p.degree_y());
  return {ps[preset - 1].first, ps[preset - 1].second, var};
}

}  // namespace algdiff
