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
#include <string>
#include <utility>
#include <vector>

#include "algdiff/kernels.hpp"
#include "algdiff/unipoly.hpp"

namespace algdiff {

/// Dense bivariate polynomial over K. Entry (i, j) is the coefficient of
/// X^i Y^j. The stored box is always trimmed so that its last row and last
/// column contain a nonzero entry; the zero polynomial has an empty box and
/// both partial degrees equal to -1.
template <Field K>
class BiPoly {
 public:
  using Elem = typename K::Elem;
  using Poly = UniPoly<K>;

  explicit BiPoly(K field) : k_(std::move(field)) {}

  /// rows[i][j] is the coefficient of X^i Y^j; ragged rows are allowed.
  BiPoly(K field, const std::vector<std::vector<Elem>>& rows) : k_(std::move(field)) {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.size());
    nx_ = rows.size();
    ny_ = w;
    c_.assign(nx_ * ny_, k_.zero());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) at(i, j) = rows[i][j];
    trim();
  }

  static BiPoly constant(const K& k, Elem c) { return BiPoly(k, {{std::move(c)}}); }
  static BiPoly x(const K& k) { return BiPoly(k, {{k.zero()}, {k.one()}}); }
  static BiPoly y(const K& k) { return BiPoly(k, {{k.zero(), k.one()}}); }
  static BiPoly monomial(const K& k, Elem c, std::size_t i, std::size_t j) {
    BiPoly r(k);
    r.resize(i + 1, j + 1);
    r.at(i, j) = std::move(c);
    r.trim();
    return r;
  }
  /// Embeds a polynomial in X (as_x = true) or in Y.
  static BiPoly from_uni(const Poly& p, bool as_x) {
    BiPoly r(p.field());
    if (p.is_zero()) return r;
    if (as_x) {
      r.resize(p.size(), 1);
      for (std::size_t i = 0; i < p.size(); ++i) r.at(i, 0) = p[i];
    } else {
      r.resize(1, p.size());
      for (std::size_t j = 0; j < p.size(); ++j) r.at(0, j) = p[j];
    }
    r.trim();
    return r;
  }

  const K& field() const { return k_; }
  bool is_zero() const { return c_.empty(); }
  int degree_x() const { return static_cast<int>(nx_) - 1; }
  int degree_y() const { return static_cast<int>(ny_) - 1; }
  int total_degree() const {
    int d = -1;
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j)
        if (!is_zero_elem(at(i, j))) d = std::max(d, static_cast<int>(i + j));
    return d;
  }
  std::size_t rows() const { return nx_; }
  std::size_t cols() const { return ny_; }

  Elem coeff(std::size_t i, std::size_t j) const { return i < nx_ && j < ny_ ? at(i, j) : k_.zero(); }
  const Elem& operator()(std::size_t i, std::size_t j) const { return at(i, j); }

  /// Coefficient of Y^j as a polynomial in X.
  Poly coeff_y(std::size_t j) const {
    std::vector<Elem> v(nx_, k_.zero());
    if (j < ny_)
      for (std::size_t i = 0; i < nx_; ++i) v[i] = at(i, j);
    return Poly(k_, std::move(v));
  }
  /// Coefficient of X^i as a polynomial in Y.
  Poly coeff_x(std::size_t i) const {
    std::vector<Elem> v(ny_, k_.zero());
    if (i < nx_)
      for (std::size_t j = 0; j < ny_; ++j) v[j] = at(i, j);
    return Poly(k_, std::move(v));
  }
  /// Leading coefficient in Y, a polynomial in X.
  Poly lc_y() const { return is_zero() ? Poly(k_) : coeff_y(ny_ - 1); }

  static BiPoly from_y_coeffs(const K& k, const std::vector<Poly>& cs) {
    BiPoly r(k);
    std::size_t nx = 0;
    for (const auto& c : cs) nx = std::max(nx, c.size());
    r.resize(nx, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j)
      for (std::size_t i = 0; i < cs[j].size(); ++i) r.at(i, j) = cs[j][i];
    r.trim();
    return r;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.c_ == b.c_;
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) { return combine(a, b, false); }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return combine(a, b, true); }
  friend BiPoly operator-(const BiPoly& a) {
    BiPoly r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend BiPoly operator*(const Elem& s, const BiPoly& a) {
    if (is_zero_elem(s)) return BiPoly(a.k_);
    BiPoly r = a;
    for (auto& v : r.c_) v = s * v;
    return r;
  }

  /// Product by Kronecker substitution Y -> X^w into the univariate kernel.
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return BiPoly(a.k_);
    const std::size_t w = a.ny_ + b.ny_ - 1;
    std::vector<Elem> pa(a.nx_ * w, a.k_.zero()), pb(b.nx_ * w, a.k_.zero());
    for (std::size_t i = 0; i < a.nx_; ++i)
      for (std::size_t j = 0; j < a.ny_; ++j) pa[i * w + j] = a.at(i, j);
    for (std::size_t i = 0; i < b.nx_; ++i)
      for (std::size_t j = 0; j < b.ny_; ++j) pb[i * w + j] = b.at(i, j);
    const auto pc = kernels::mul(pa, pb);
    BiPoly r(a.k_);
    r.resize(a.nx_ + b.nx_ - 1, w);
    for (std::size_t t = 0; t < pc.size(); ++t) {
      const std::size_t i = t / w, j = t % w;
      if (i < r.nx_) r.at(i, j) = is_zero_elem(pc[t]) ? a.k_.zero() : pc[t];
    }
    r.trim();
    return r;
  }
  BiPoly& operator+=(const BiPoly& b) { return *this = *this + b; }
  BiPoly& operator-=(const BiPoly& b) { return *this = *this - b; }
  BiPoly& operator*=(const BiPoly& b) { return *this = *this * b; }

  BiPoly pow(unsigned e) const {
    BiPoly r = constant(k_, k_.one()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  BiPoly dx() const {
    if (nx_ <= 1) return BiPoly(k_);
    BiPoly r(k_);
    r.resize(nx_ - 1, ny_);
    for (std::size_t i = 1; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j) r.at(i - 1, j) = k_.from_int(static_cast<std::int64_t>(i)) * at(i, j);
    r.trim();
    return r;
  }
  BiPoly dy() const {
    if (ny_ <= 1) return BiPoly(k_);
    BiPoly r(k_);
    r.resize(nx_, ny_ - 1);
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 1; j < ny_; ++j) r.at(i, j - 1) = k_.from_int(static_cast<std::int64_t>(j)) * at(i, j);
    r.trim();
    return r;
  }

  /// Multiplication by X^s Y^t.
  BiPoly shift_up(std::size_t s, std::size_t t) const {
    if (is_zero()) return *this;
    BiPoly r(k_);
    r.resize(nx_ + s, ny_ + t);
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j) r.at(i + s, j + t) = at(i, j);
    return r;
  }

  /// P(X + a, Y).
  BiPoly shift_x(const Elem& a) const {
    if (is_zero() || is_zero_elem(a)) return *this;
    std::vector<Poly> cs;
    for (std::size_t j = 0; j < ny_; ++j) cs.push_back(coeff_y(j).shift(a));
    return from_y_coeffs(k_, cs);
  }

  /// P(a, Y).
  Poly eval_x(const Elem& a) const {
    std::vector<Elem> v(ny_, k_.zero());
    for (std::size_t j = 0; j < ny_; ++j) {
      Elem acc = k_.zero();
      for (std::size_t i = nx_; i-- > 0;) acc = acc * a + at(i, j);
      v[j] = acc;
    }
    return Poly(k_, std::move(v));
  }

  Elem eval(const Elem& x, const Elem& y) const { return eval_x(x)(y); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = nx_; i-- > 0;)
      for (std::size_t j = ny_; j-- > 0;) {
        if (is_zero_elem(at(i, j))) continue;
        if (!s.empty()) s += " + ";
        s += "(" + k_.to_string(at(i, j)) + ")";
        if (i) s += "*X" + (i > 1 ? "^" + std::to_string(i) : std::string());
        if (j) s += "*Y" + (j > 1 ? "^" + std::to_string(j) : std::string());
      }
    return s;
  }

 private:
  Elem& at(std::size_t i, std::size_t j) { return c_[i * ny_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return c_[i * ny_ + j]; }

  void resize(std::size_t nx, std::size_t ny) {
    nx_ = nx;
    ny_ = ny;
    c_.assign(nx * ny, k_.zero());
  }

  void trim() {
    std::size_t nx = 0, ny = 0;
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j)
        if (!is_zero_elem(at(i, j))) {
          nx = std::max(nx, i + 1);
          ny = std::max(ny, j + 1);
        }
    if (nx == nx_ && ny == ny_) return;
    std::vector<Elem> c(nx * ny, k_.zero());
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) c[i * ny + j] = at(i, j);
    c_ = std::move(c);
    nx_ = nx;
    ny_ = ny;
  }

  void check(const BiPoly& o) const {
    if (!(k_ == o.k_)) throw DomainError("field mismatch");
  }

  static BiPoly combine(const BiPoly& a, const BiPoly& b, bool subtract) {
    a.check(b);
    BiPoly r(a.k_);
    r.resize(std::max(a.nx_, b.nx_), std::max(a.ny_, b.ny_));
    for (std::size_t i = 0; i < a.nx_; ++i)
      for (std::size_t j = 0; j < a.ny_; ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.nx_; ++i)
      for (std::size_t j = 0; j < b.ny_; ++j) {
        if (subtract)
          r.at(i, j) -= b.at(i, j);
        else
          r.at(i, j) += b.at(i, j);
      }
    r.trim();
    return r;
  }

  K k_;
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<Elem> c_;
};

/// Determinant of a square matrix over K[X] by fraction-free elimination.
template <Field K>
UniPoly<K> bareiss_det(std::vector<std::vector<UniPoly<K>>> m, const K& k) {
  const std::size_t n = m.size();
  if (n == 0) return UniPoly<K>::constant(k, k.one());
  UniPoly<K> prev = UniPoly<K>::constant(k, k.one());
  bool negate = false;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (m[c][c].is_zero()) {
      std::size_t r = c + 1;
      while (r < n && m[r][c].is_zero()) ++r;
      if (r == n) return UniPoly<K>(k);
      std::swap(m[r], m[c]);
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j)
        m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]).exact_div(prev);
      m[i][c] = UniPoly<K>(k);
    }
    prev = m[c][c];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Res_Y(a, b): determinant of the Sylvester matrix whose first deg_Y(b)
/// rows hold the coefficients of a, highest power first.
template <Field K>
UniPoly<K> resultant_y(const BiPoly<K>& a, const BiPoly<K>& b) {
  const K& k = a.field();
  if (a.is_zero() || b.is_zero()) throw DomainError("resultant of a zero polynomial");
  const int m = a.degree_y(), n = b.degree_y();
  if (m < 1 && n < 1) throw DomainError("resultant of two polynomials constant in Y");
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<UniPoly<K>>> s(size, std::vector<UniPoly<K>>(size, UniPoly<K>(k)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) s[r][r + j] = a.coeff_y(m - j);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) s[n + r][r + j] = b.coeff_y(n - j);
  return bareiss_det(std::move(s), k);
}

/// Res_Y(P, P_Y); only its vanishing is meaningful.
template <Field K>
UniPoly<K> discriminant_y(const BiPoly<K>& p) {
  return resultant_y(p, p.dy());
}

/// True when P(a, Y) keeps its Y-degree and is squarefree, i.e. the leading
/// coefficient and the discriminant of P do not vanish at a.
template <Field K>
bool good_point(const BiPoly<K>& p, const typename K::Elem& a) {
  const UniPoly<K> pa = p.eval_x(a);
  if (pa.degree() != p.degree_y()) return false;
  return gcd(pa, pa.derivative()).degree() == 0;
}

}  // namespace algdiff
