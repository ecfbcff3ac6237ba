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

// The quotient algebra A = K[Y]/(p(Y)) for squarefree p. A is a product of
// fields, so a nonzero element is either a unit or shares a proper factor
// with p; division reports which.

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algdiff/errors.hpp"
#include "algdiff/field.hpp"
#include "algdiff/kernels.hpp"
#include "algdiff/unipoly.hpp"

namespace algdiff {

template <Field K>
class AlgElem;

template <Field K>
class QuotientAlgebra {
 public:
  using Elem = typename K::Elem;
  using Poly = UniPoly<K>;

  /// Validates deg(p) >= 1 and gcd(p, p') = 1; p is stored monic.
  explicit QuotientAlgebra(const Poly& p) {
    if (p.degree() < 1) throw DomainError("defining polynomial must have degree at least 1");
    if (gcd(p, p.derivative()).degree() != 0)
      throw DomainError("defining polynomial " + p.to_string("Y") + " is not squarefree");
    data_ = std::make_shared<Data>(Data{p.field(), p.monic()});
  }

  const K& field() const { return data_->k; }
  const Poly& modulus() const { return data_->p; }
  int degree() const { return data_->p.degree(); }

  AlgElem<K> zero() const;
  AlgElem<K> one() const;
  AlgElem<K> y() const;
  AlgElem<K> from_scalar(const Elem& c) const;
  /// Class of an arbitrary polynomial in Y.
  AlgElem<K> from_poly(const Poly& q) const;

  /// The algebra K[Y]/(factor) for a monic-able divisor of the modulus.
  QuotientAlgebra quotient(const Poly& factor) const {
    if (factor.degree() < 1 || !(modulus() % factor).is_zero())
      throw DomainError("factor " + factor.to_string("Y") + " does not divide " + modulus().to_string("Y"));
    return QuotientAlgebra(factor);
  }

  friend bool operator==(const QuotientAlgebra& a, const QuotientAlgebra& b) {
    return a.data_ == b.data_ || a.data_->p == b.data_->p;
  }

 private:
  struct Data {
    K k;
    Poly p;
  };
  explicit QuotientAlgebra(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
  friend class AlgElem<K>;
};

/// Element of a QuotientAlgebra, stored as its dense remainder modulo p. The
/// value-initialized AlgElem has no parent and is the zero of every algebra,
/// which lets generic series code value-initialize coefficient vectors.
template <Field K>
class AlgElem {
 public:
  using Elem = typename K::Elem;
  using Algebra = QuotientAlgebra<K>;
  using Poly = UniPoly<K>;

  AlgElem() = default;

  bool has_parent() const { return data_ != nullptr; }
  Algebra parent() const {
    if (!data_) throw DomainError("context-free zero has no parent algebra");
    return Algebra(data_);
  }

  bool is_zero() const {
    for (const Elem& c : c_)
      if (!is_zero_elem(c)) return false;
    return true;
  }

  Poly rep() const {
    if (!data_) throw DomainError("context-free zero has no representative field");
    return Poly(data_->k, c_);
  }
  /// Coordinates in the basis 1, y, ..., y^(n-1).
  std::vector<Elem> decompose() const {
    if (!data_) throw DomainError("context-free zero has no coordinates");
    return c_;
  }
  const std::vector<Elem>& raw() const { return c_; }

  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    if (!a.data_ || !b.data_) return a.is_zero() && b.is_zero();
    check(a, b);
    return a.c_ == b.c_;
  }

  friend AlgElem operator+(const AlgElem& a, const AlgElem& b) {
    if (!a.data_) return b;
    if (!b.data_) return a;
    check(a, b);
    AlgElem r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend AlgElem operator-(const AlgElem& a) {
    AlgElem r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend AlgElem operator-(const AlgElem& a, const AlgElem& b) {
    if (!b.data_) return a;
    if (!a.data_) return -b;
    check(a, b);
    AlgElem r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend AlgElem operator*(const AlgElem& a, const AlgElem& b) {
    if (!a.data_) return a;
    if (!b.data_) return b;
    check(a, b);
    const std::size_t n = a.c_.size();
    std::vector<Elem> prod(2 * n - 1, a.data_->k.zero());
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero_elem(a.c_[i])) continue;
      for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return AlgElem(a.data_, reduce(*a.data_, std::move(prod)));
  }
  friend AlgElem operator*(const Elem& s, const AlgElem& a) {
    AlgElem r = a;
    for (auto& c : r.c_) c = s * c;
    return r;
  }
  AlgElem& operator+=(const AlgElem& b) { return *this = *this + b; }
  AlgElem& operator-=(const AlgElem& b) { return *this = *this - b; }
  AlgElem& operator*=(const AlgElem& b) { return *this = *this * b; }

  struct InvertResult {
    std::optional<AlgElem> inverse;
    std::optional<Poly> factor;  // monic gcd(rep, p) with 1 <= deg < deg p
  };

  /// Either the inverse, or the proper factor gcd(rep, p) exhibiting a zero
  /// divisor.
  InvertResult invert_or_split() const {
    if (is_zero()) throw DomainError("inverse of zero in the quotient algebra");
    const auto x = xgcd(rep(), data_->p);
    if (x.g.degree() == 0) {
      const Elem s = data_->k.one() / x.g.lead();
      return {AlgElem(data_, pad(*data_, (s * x.s).coeffs())), std::nullopt};
    }
    return {std::nullopt, x.g.monic()};
  }

  /// Image in K[Y]/(q) for a divisor q of the modulus.
  AlgElem project(const Algebra& target) const {
    if (!target.data_ || !(parent().modulus() % target.modulus()).is_zero())
      throw DomainError("projection target does not divide the modulus");
    return target.from_poly(rep());
  }
  AlgElem project(const Poly& factor) const { return project(parent().quotient(factor)); }

  std::string to_string() const {
    if (!data_) return "0";
    return rep().to_string("y");
  }

  /// Product of AlgElem coefficient vectors by Kronecker substitution: each
  /// element occupies a slot of width 2n-1 in one long base-field product,
  /// and every slot is reduced modulo p afterwards.
  static std::vector<AlgElem> kronecker_mul(std::span<const AlgElem> a, std::span<const AlgElem> b) {
    const Data* d = nullptr;
    std::shared_ptr<const Data> owner;
    for (const auto& e : a)
      if (e.data_) {
        owner = e.data_;
        break;
      }
    if (!owner)
      for (const auto& e : b)
        if (e.data_) {
          owner = e.data_;
          break;
        }
    std::vector<AlgElem> out(a.size() + b.size() - 1);
    if (!owner) return out;
    d = owner.get();
    const std::size_t n = d->p.degree(), w = 2 * n - 1;
    auto pack = [&](std::span<const AlgElem> v) {
      std::vector<Elem> flat(v.size() * w, d->k.zero());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].data_) continue;
        if (v[i].data_ != owner && !(v[i].data_->p == d->p)) throw DomainError("algebra mismatch");
        std::copy(v[i].c_.begin(), v[i].c_.end(), flat.begin() + i * w);
      }
      return flat;
    };
    const auto fa = pack(a), fb = pack(b);
    const auto prod = kernels::mul(std::span<const Elem>(fa), std::span<const Elem>(fb));
    for (std::size_t t = 0; t < out.size(); ++t) {
      std::vector<Elem> slot(w, d->k.zero());
      for (std::size_t k = 0; k < w && t * w + k < prod.size(); ++k) slot[k] = prod[t * w + k];
      out[t] = AlgElem(owner, reduce(*d, std::move(slot)));
    }
    return out;
  }

 private:
  using Data = typename Algebra::Data;
  AlgElem(std::shared_ptr<const Data> d, std::vector<Elem> c) : data_(std::move(d)), c_(std::move(c)) {}

  static void check(const AlgElem& a, const AlgElem& b) {
    if (a.data_ != b.data_ && !(a.data_->p == b.data_->p)) throw DomainError("algebra mismatch");
  }

  static std::vector<Elem> pad(const Data& d, std::vector<Elem> c) {
    c.resize(std::max<std::size_t>(c.size(), d.p.degree()), d.k.zero());
    return c;
  }

  /// Remainder modulo the monic p of a dense vector, returned with exactly
  /// deg(p) entries.
  static std::vector<Elem> reduce(const Data& d, std::vector<Elem> r) {
    const std::size_t n = d.p.degree();
    const auto& pc = d.p.coeffs();
    for (std::size_t i = r.size(); i-- > n;) {
      const Elem f = r[i];
      if (is_zero_elem(f)) continue;
      for (std::size_t j = 0; j < n; ++j) r[i - n + j] -= f * pc[j];
    }
    r.resize(n, d.k.zero());
    return r;
  }

  std::shared_ptr<const Data> data_;
  std::vector<Elem> c_;
  friend class QuotientAlgebra<K>;
};

template <Field K>
AlgElem<K> QuotientAlgebra<K>::zero() const {
  return AlgElem<K>(data_, std::vector<Elem>(degree(), field().zero()));
}
template <Field K>
AlgElem<K> QuotientAlgebra<K>::one() const {
  return from_scalar(field().one());
}
template <Field K>
AlgElem<K> QuotientAlgebra<K>::y() const {
  return from_poly(Poly::x(field()));
}
template <Field K>
AlgElem<K> QuotientAlgebra<K>::from_scalar(const Elem& c) const {
  std::vector<Elem> v(degree(), field().zero());
  v[0] = c;
  return AlgElem<K>(data_, std::move(v));
}
template <Field K>
AlgElem<K> QuotientAlgebra<K>::from_poly(const Poly& q) const {
  std::vector<Elem> v = q.coeffs();
  if (v.size() < static_cast<std::size_t>(degree())) v.resize(degree(), field().zero());
  return AlgElem<K>(data_, AlgElem<K>::reduce(*data_, std::move(v)));
}

template <Field K>
bool is_zero(const AlgElem<K>& a) {
  return a.is_zero();
}

template <Field K>
AlgElem<K> one_like(const AlgElem<K>& a) {
  return a.parent().one();
}

template <Field K>
AlgElem<K> mul_int(const AlgElem<K>& a, std::int64_t n) {
  if (!a.has_parent()) return a;
  return a.parent().field().from_int(n) * a;
}

/// Raised by inv() when a division in the algebra meets a zero divisor.
template <Field K>
class ZeroDivisorError : public std::runtime_error {
 public:
  explicit ZeroDivisorError(UniPoly<K> factor)
      : std::runtime_error("zero divisor in quotient algebra; factor " + factor.to_string("Y")),
        factor_(std::move(factor)) {}
  const UniPoly<K>& factor() const { return factor_; }

 private:
  UniPoly<K> factor_;
};

template <Field K>
AlgElem<K> inv(const AlgElem<K>& a) {
  auto r = a.invert_or_split();
  if (r.inverse) return *r.inverse;
  throw ZeroDivisorError<K>(*r.factor);
}

}  // namespace algdiff
