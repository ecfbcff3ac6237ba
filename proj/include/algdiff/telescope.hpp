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


// Creative telescoping for the rational function F = Y P_Y / P, whose
// residues in Y are the roots of P. A relation
//   Lambda(X, dX, dY) F = 0,   Lambda = sum_k dY^k Lambda_k(X, dX),
// yields an operator Lambda_k (the lowest nonzero one) annihilating every
// root. The refined variant searches A(X, theta) directly together with a
// numerator G such that A F = dY(G / P^(d+2)).

#pragma once

#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "algdiff/bipoly.hpp"
#include "algdiff/bounds.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/lift.hpp"
#include "algdiff/linalg.hpp"

namespace algdiff {

/// The generators X^i dX^j dY^k F (0 <= i <= N_X, j + k <= N_d), each written
/// as numerator / P^(N_d+1). Rows share the numerator of (j, k) up to the
/// factor X^i, so only those numerators are stored.
template <Field K>
struct DerivativeTable {
  struct Label {
    int i, j, k;
  };
  BiPoly<K> poly;
  int n_x = 0, n_d = 0;
  std::vector<Label> labels;          // ordered by k, then j, then i
  std::vector<BiPoly<K>> numerators;  // indexed by jk_index(j, k)
  int max_x = 0, max_y = 0;           // monomial box X^a Y^b of the numerators

  std::size_t jk_index(int j, int k) const {
    // (j, k) pairs enumerated by k, then j in [0, N_d - k].
    std::size_t before = 0;
    for (int kk = 0; kk < k; ++kk) before += static_cast<std::size_t>(n_d - kk + 1);
    return before + static_cast<std::size_t>(j);
  }
  std::size_t rows() const { return labels.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(max_x + 1) * (max_y + 1); }

  /// Coordinates of row t in the basis X^a Y^b, index a * (max_y + 1) + b.
  std::vector<typename K::Elem> coordinates(std::size_t t) const {
    const auto& l = labels[t];
    const auto& g = numerators[jk_index(l.j, l.k)];
    std::vector<typename K::Elem> v(cols(), poly.field().zero());
    for (std::size_t a = 0; a < g.rows(); ++a)
      for (std::size_t b = 0; b < g.cols(); ++b) v[(a + l.i) * (max_y + 1) + b] = g(a, b);
    return v;
  }
};

/// Numerators N_jk with dX^j dY^k F = N_jk / P^(j+k+1), brought to the common
/// level P^(N_d+1). `threads` bounds the workers for the final products.
template <Field K>
DerivativeTable<K> derivative_table(const BiPoly<K>& p, int n_x, int n_d, unsigned threads = 1) {
  if (n_x < 0 || n_d < 0) throw DomainError("table bounds must be nonnegative");
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  const K& k = p.field();
  DerivativeTable<K> t{p, n_x, n_d, {}, {}, 0, 0};
  t.max_x = n_x + p.degree_x() * (n_d + 1);
  t.max_y = p.degree_y() * (n_d + 1);
  const auto px = p.dx(), py = p.dy();

  std::vector<BiPoly<K>> level;  // N_jk in (j, k) order
  level.reserve(static_cast<std::size_t>((n_d + 1) * (n_d + 2) / 2));
  BiPoly<K> col = BiPoly<K>::y(k) * py;  // N_0k
  for (int kk = 0; kk <= n_d; ++kk) {
    if (kk > 0) col = col.dy() * p - k.from_int(kk) * col * py;
    BiPoly<K> n = col;
    for (int j = 0; j + kk <= n_d; ++j) {
      if (j > 0) n = n.dx() * p - k.from_int(j + kk) * n * px;
      level.push_back(n);
    }
  }
  std::vector<BiPoly<K>> powers{BiPoly<K>::constant(k, k.one())};
  for (int e = 1; e <= n_d; ++e) powers.push_back(powers.back() * p);

  t.numerators.assign(level.size(), BiPoly<K>(k));
  std::vector<std::pair<int, int>> jk;
  for (int kk = 0; kk <= n_d; ++kk)
    for (int j = 0; j + kk <= n_d; ++j) jk.emplace_back(j, kk);
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t s = from; s < jk.size(); s += step)
      t.numerators[s] = level[s] * powers[n_d - jk[s].first - jk[s].second];
  };
  const std::size_t nt = std::max<std::size_t>(1, std::min<std::size_t>(threads, jk.size()));
  if (nt == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nt; ++w) pool.emplace_back(work, w, nt);
    for (auto& th : pool) th.join();
  }
  for (auto [j, kk] : jk)
    for (int i = 0; i <= n_x; ++i) t.labels.push_back({i, j, kk});
  return t;
}

template <Field K>
struct Telescoper {
  int k = 0;         // exponent of the dY^k prefactor
  DiffOp<K> A;       // operator in d/dX, canonical
  bool B_present;    // whether higher powers of dY carry a certificate part
};

/// Operator from a kernel vector of the quadratic derivative table. Throws
/// DomainError when the kernel is empty (bounds too small).
template <Field K>
Telescoper<K> find_lambda(const BiPoly<K>& p, int n_x, int n_d, unsigned threads = 1) {
  const K& k = p.field();
  const auto table = derivative_table(p, n_x, n_d, threads);
  const std::size_t nu = table.rows(), ny = static_cast<std::size_t>(table.max_y + 1);
  // Transposed system: one equation per monomial X^a Y^b, one unknown per
  // generator, so that a kernel vector is a vanishing combination.
  LinearSystem<K> sys(k, nu, 0);
  using S = typename LinearSystem<K>::S;
  const std::size_t neq = table.cols();
  std::vector<std::vector<S>> eq(neq, std::vector<S>(nu, sys.ops().zero()));
  std::vector<bool> used(neq, false);
  for (std::size_t u = 0; u < nu; ++u) {
    const auto& l = table.labels[u];
    const auto& g = table.numerators[table.jk_index(l.j, l.k)];
    for (std::size_t a = 0; a < g.rows(); ++a)
      for (std::size_t b = 0; b < g.cols(); ++b) {
        if (is_zero_elem(g(a, b))) continue;
        const std::size_t e = (a + l.i) * ny + b;
        eq[e][u] = sys.to_storage(g(a, b));
        used[e] = true;
      }
  }
  for (std::size_t e = 0; e < neq; ++e) {
    if (!used[e]) continue;
    SparseRow<S> r;
    r.tail = std::move(eq[e]);
    sys.add_storage_row(std::move(r));
  }
  eq.clear();
  const auto ech = eliminate(std::move(sys));
  if (ech.free_columns().empty())
    throw DomainError("derivative table has an empty kernel at N_X=" + std::to_string(n_x) +
                      ", N_d=" + std::to_string(n_d));
  const auto v = ech.kernel_vector(ech.free_columns().front());

  Telescoper<K> out{0, DiffOp<K>(k, OpVar::dx, {}), false};
  int k0 = -1;
  std::vector<std::vector<typename K::Elem>> coeffs(static_cast<std::size_t>(n_d + 1));
  for (std::size_t u = 0; u < nu; ++u) {
    if (is_zero_elem(v[u])) continue;
    const auto& l = table.labels[u];
    if (k0 < 0) k0 = l.k;
    if (l.k != k0) {
      out.B_present = true;
      continue;
    }
    auto& c = coeffs[static_cast<std::size_t>(l.j)];
    if (c.size() <= static_cast<std::size_t>(l.i)) c.resize(static_cast<std::size_t>(l.i) + 1, k.zero());
    c[static_cast<std::size_t>(l.i)] = v[u];
  }
  ALGDIFF_ASSERT(k0 >= 0, "kernel vector is zero");
  std::vector<UniPoly<K>> ops;
  for (auto& c : coeffs) ops.emplace_back(k, std::move(c));
  out.k = k0;
  out.A = DiffOp<K>(k, OpVar::dx, std::move(ops)).canonical();
  return out;
}

/// Euler-operator telescoper: A = sum a_ij X^i theta^j with i, j <= d and a
/// numerator G such that A F = dY(G / P^(d+2)), i.e.
///   sum a_ij X^i N_j P^(d+2-j) = G_Y P - (d+2) G P_Y,
/// where theta^j F = N_j / P^(j+1).
template <Field K>
struct ThetaTelescoper {
  DiffOp<K> op;   // canonical
  DiffOp<K> raw;  // the operator actually paired with G
  BiPoly<K> G;
};

/// Returns nullopt when no operator of this size exists.
template <Field K>
std::optional<ThetaTelescoper<K>> find_theta_operator(const BiPoly<K>& p, int d) {
  if (d < 0) throw DomainError("telescoper size must be nonnegative");
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  const K& k = p.field();
  using Elem = typename K::Elem;
  const auto prof = DegreeProfile::of(p);
  const int dx = static_cast<int>(prof.D_X), dy = static_cast<int>(prof.D_Y), dt = static_cast<int>(prof.D);
  const auto px = p.dx(), py = p.dy();

  // Support of G and of the equations.
  const int gx = (d + 2) * dx + d + 1, gy = (d + 2) * dy, gt = (d + 2) * dt + d + 1;
  const int ex = (d + 3) * dx + d + 1, ey = (d + 3) * dy;
  std::vector<std::size_t> offset(static_cast<std::size_t>(gx) + 2, 0);
  for (int a = 0; a <= gx; ++a) offset[a + 1] = offset[a] + static_cast<std::size_t>(std::min(gy, gt - a) + 1);
  const std::size_t ng = offset.back(), nt = static_cast<std::size_t>((d + 1) * (d + 1));

  // Theta-derivative numerators, each multiplied up to level P^(d+3).
  std::vector<BiPoly<K>> h;
  {
    BiPoly<K> n = BiPoly<K>::y(k) * py;
    std::vector<BiPoly<K>> powers{BiPoly<K>::constant(k, k.one())};
    for (int e = 1; e <= d + 2; ++e) powers.push_back(powers.back() * p);
    for (int j = 0; j <= d; ++j) {
      if (j > 0) n = (n.dx() * p - k.from_int(j) * n * px).shift_up(1, 0);
      h.push_back(n * powers[static_cast<std::size_t>(d + 2 - j)]);
    }
  }

  LinearSystem<K> sys(k, ng + nt, ng);
  const Elem m = k.from_int(d + 2);
  for (int a = 0; a <= ex; ++a)
    for (int b = 0; b <= ey; ++b) {
      std::vector<Elem> band, tail(nt, k.zero());
      bool nonzero = false;
      const int lo_a = std::max(0, a - dx), hi_a = std::min(a, gx);
      std::size_t lo = 0;
      if (lo_a <= hi_a) {
        lo = offset[lo_a];
        band.assign(offset[hi_a + 1] - lo, k.zero());
        for (int ga = lo_a; ga <= hi_a; ++ga) {
          const std::size_t x = static_cast<std::size_t>(a - ga);
          for (int gb = 0; gb <= std::min(gy, gt - ga); ++gb) {
            // -(gb Y^(gb-1) P - (d+2) Y^gb P_Y) at X^x Y^b
            Elem v = k.zero();
            if (gb >= 1 && b - gb + 1 >= 0) v -= k.from_int(gb) * p.coeff(x, static_cast<std::size_t>(b - gb + 1));
            if (b - gb >= 0) v += m * py.coeff(x, static_cast<std::size_t>(b - gb));
            if (!is_zero_elem(v)) {
              band[offset[ga] - lo + static_cast<std::size_t>(gb)] = v;
              nonzero = true;
            }
          }
        }
      }
      for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= d && i <= a; ++i) {
          const Elem v = h[j].coeff(static_cast<std::size_t>(a - i), static_cast<std::size_t>(b));
          if (is_zero_elem(v)) continue;
          tail[static_cast<std::size_t>(j * (d + 1) + i)] = v;
          nonzero = true;
        }
      if (nonzero) sys.add_row(lo, band, tail);
    }
  const auto ech = eliminate(std::move(sys));
  std::optional<std::size_t> fc;
  for (std::size_t c : ech.free_columns())
    if (c >= ng) {
      fc = c;
      break;
    }
  if (!fc) return std::nullopt;
  const auto v = ech.kernel_vector(*fc);

  std::vector<UniPoly<K>> coeffs;
  for (int j = 0; j <= d; ++j) {
    std::vector<Elem> c(v.begin() + static_cast<std::ptrdiff_t>(ng + j * (d + 1)),
                        v.begin() + static_cast<std::ptrdiff_t>(ng + (j + 1) * (d + 1)));
    coeffs.emplace_back(k, std::move(c));
  }
  std::vector<std::vector<Elem>> g(static_cast<std::size_t>(gx + 1), std::vector<Elem>(gy + 1, k.zero()));
  for (int ga = 0; ga <= gx; ++ga)
    for (int gb = 0; gb <= std::min(gy, gt - ga); ++gb) g[ga][gb] = v[offset[ga] + static_cast<std::size_t>(gb)];
  DiffOp<K> raw(k, OpVar::theta, std::move(coeffs));
  ALGDIFF_ASSERT(!raw.is_zero(), "free tail column produced a zero operator");
  return ThetaTelescoper<K>{raw.canonical(), raw, BiPoly<K>(k, g)};
}

/// Smallest d <= d_max for which find_theta_operator succeeds.
template <Field K>
std::optional<std::pair<int, ThetaTelescoper<K>>> minimal_theta_operator(const BiPoly<K>& p, int d_max,
                                                                         int d_min = 0) {
  for (int d = d_min; d <= d_max; ++d)
    if (auto r = find_theta_operator(p, d)) return std::make_pair(d, std::move(*r));
  return std::nullopt;
}

/// Certificate that op annihilates every root of P: the operator is applied
/// to the conjugate-root series over K[Y]/(P(a, Y)) at the certification
/// precision, after moving to the smallest good integer point a.
template <Field K>
bool verify_associated(const DiffOp<K>& op, const BiPoly<K>& p) {
  if (op.is_zero()) throw DomainError("the zero operator is not certified");
  if (p.degree_y() < 1) throw DomainError("polynomial has degree 0 in Y");
  const K& k = p.field();
  const auto a = find_good_shift(p);
  if (!a) throw HypothesisError("H_b", "no good expansion point found within the scan budget");
  BiPoly<K> q = p;
  DiffOp<K> l = op;
  if (*a != 0) {
    const auto s = k.from_int(*a);
    q = p.shift_x(s);
    l = op.shift_x(-s);
  }
  const i64 sigma = sigma_bound(q.degree_x(), q.degree_y(), l.degree_x(), l.order());
  const std::size_t loss = l.var() == OpVar::dx ? static_cast<std::size_t>(l.order()) : 0;
  const auto phi = newton_lift(q, static_cast<std::size_t>(sigma) + loss);
  AlgebraEmbed<K> emb{phi.series[0].parent()};
  return l.apply(phi.series, emb).truncate(static_cast<std::size_t>(sigma)).is_zero();
}

}  // namespace algdiff
