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

// Degree, order and precision bounds as plain integer formulas. Nothing here
// looks at a polynomial beyond its degree profile, so the formulas can be
// audited on their own.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "algdiff/bipoly.hpp"
#include "algdiff/errors.hpp"

namespace algdiff {

using i64 = std::int64_t;

/// Exact binomial coefficient; zero outside 0 <= k <= n.
inline i64 binomial(i64 n, i64 k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  i64 r = 1;
  for (i64 i = 1; i <= k; ++i) {
    if (r > INT64_MAX / (n - k + i)) throw DomainError("binomial coefficient overflows 64 bits");
    r = r * (n - k + i) / i;
  }
  return r;
}

struct DegreeProfile {
  i64 D = 0;      // total degree
  i64 D_X = 0;
  i64 D_Y = 0;
  i64 Delta = 0;  // D_X + D_Y - D

  static DegreeProfile make(i64 dx, i64 dy, i64 d) {
    if (dy < 1) throw DomainError("degree in Y must be at least 1");
    if (dx < 0 || d < std::max(dx, dy) || d > dx + dy)
      throw DomainError("inconsistent degree profile (D_X=" + std::to_string(dx) + ", D_Y=" +
                        std::to_string(dy) + ", D=" + std::to_string(d) + ")");
    return {d, dx, dy, dx + dy - d};
  }
  template <Field K>
  static DegreeProfile of(const BiPoly<K>& p) {
    return make(p.degree_x(), p.degree_y(), p.total_degree());
  }
};

/// Degree bound in X for the cleared minimal resolvent of order r.
inline i64 eta(i64 dx, i64 dy, i64 r) {
  if (r < 1 || r > dy) throw DomainError("resolvent order r=" + std::to_string(r) + " outside [1, D_Y]");
  if (dx < 0) throw DomainError("negative degree in X");
  return ((2 * r - 1) * dy + 2 * r * r - 4 * r + 3) * dx - r * (r - 1) / 2;
}

struct QuadraticBounds {
  i64 N_X;        // coefficient degree in X
  i64 N_d;        // order in d/dX
  i64 rec_order;  // order of the derived recurrence
  i64 rec_deg;    // degree of its coefficients
  friend bool operator==(const QuadraticBounds&, const QuadraticBounds&) = default;
};

inline QuadraticBounds thm2_bounds(i64 dx, i64 dy) {
  if (dy < 1) throw DomainError("degree in Y must be at least 1");
  return {3 * dx * dy, 6 * dy, 3 * dy * (dx + 2), 6 * dy};
}

/// Order and coefficient-degree bound for the Euler-operator telescoper.
inline i64 thm3_bound(const DegreeProfile& p) {
  return 2 * p.D_X * p.D_Y + p.D_Y - p.Delta * p.Delta - p.Delta + 1;
}

/// (B_X, B_d) parameter choices that guarantee a certified AlgToDiff output.
inline std::array<std::pair<i64, i64>, 3> thm4_presets(i64 dx, i64 dy) {
  if (dy < 2) throw HypothesisError("H'", "degree in Y must be at least 2");
  const i64 b = 4 * dx * dy + dy - 2 * dx - 2;
  return {{{4 * dx * dy * dy, dy}, {5 * dx * dy, 5 * dy}, {b, b}}};
}

/// Number of monomials X^a Y^b with a <= delta_x, b <= delta_y, a+b <= delta.
inline i64 monomial_count(i64 delta, i64 delta_x, i64 delta_y) {
  if (delta_x < 0 || delta_y < 0 || delta < std::max(delta_x, delta_y) || delta > delta_x + delta_y + 1)
    throw DomainError("monomial_count precondition violated");
  return (delta_x + 1) * (delta_y + 1) - binomial(delta_x + delta_y - delta + 1, 2);
}

struct BoundSet {
  i64 B_X;
  i64 B_d;
  i64 Sigma;  // order of the Pade-Hermite approximation
  i64 sigma;  // precision that certifies an operator
};

/// Certification precision for an operator of order b_d with coefficients of
/// degree b_x. The resultant argument behind it needs strict slack
/// (deg R < sigma), which the closed form only provides when D_X >= 1 and
/// D_Y >= 2; otherwise one more term is required.
inline i64 sigma_bound(i64 dx, i64 dy, i64 b_x, i64 b_d) {
  const i64 s = 4 * dx * dy * b_d + b_x * dy - 2 * dx * b_d;
  return (dx >= 1 && dy >= 2) ? s : s + 1;
}

inline BoundSet bound_set(i64 dx, i64 dy, i64 b_x, i64 b_d) {
  if (b_x < 0 || b_d < 0) throw DomainError("negative degree or order bound");
  return {b_x, b_d, b_x * b_d + b_x + b_d, sigma_bound(dx, dy, b_x, b_d)};
}

/// Number of generators X^i dX^j dY^k F of the quadratic telescoping table.
inline i64 table_rows(i64 n_x, i64 n_d) { return (n_x + 1) * binomial(n_d + 2, 2); }

/// Dimension of the numerator space those generators live in.
inline i64 table_cols(i64 dx, i64 dy, i64 n_x, i64 n_d) {
  return (dy * (n_d + 1) + 1) * (n_x + 1 + dx * (n_d + 1));
}

/// Closed form of table_rows - table_cols at the quadratic bounds.
inline i64 table_excess_closed_form(i64 dx, i64 dy) {
  return (12 * dy * dy - 7 * dy - 1) * dx + 12 * dy * dy + 8 * dy;
}

}  // namespace algdiff
