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


// Reduction of rational data modulo word-size primes, Chinese remaindering
// and rational reconstruction.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algdiff/bipoly.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/field.hpp"

namespace algdiff {

/// Primes just below 2^62, in decreasing order, skipping none.
class PrimeStream {
 public:
  std::uint64_t next() {
    do cur_ -= 2;
    while (!is_prime_u64(cur_));
    return cur_;
  }

 private:
  std::uint64_t cur_ = (std::uint64_t{1} << 62) + 1;
};

/// Image of a rational polynomial in F_q, or nullopt when a denominator
/// vanishes modulo q.
inline std::optional<BiPoly<PrimeField>> reduce_mod(const BiPoly<RationalField>& p, const PrimeField& f) {
  std::vector<std::vector<Zp>> rows(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const Rational& c = p.coeff(i, j);
      if (boost::multiprecision::denominator(c) % f.modulus() == 0) return std::nullopt;
      rows[i].push_back(f.from_rational(c));
    }
  return BiPoly<PrimeField>(f, rows);
}

inline std::optional<Zp> reduce_mod(const Rational& c, const PrimeField& f) {
  if (boost::multiprecision::denominator(c) % f.modulus() == 0) return std::nullopt;
  return f.from_rational(c);
}

/// x mod m and y mod q combined into the residue mod m*q in [0, m*q).
inline Integer crt(const Integer& x, const Integer& m, std::uint64_t y, std::uint64_t q) {
  const PrimeField f(q);
  const Zp xm = f.from_integer(x), mm = f.from_integer(m);
  const Zp t = (Zp::raw(y, q) - xm) / mm;
  return x + m * Integer(t.value());
}

/// The fraction n/d with |n|, d <= sqrt(m/2) and n = u d (mod m), if any.
inline std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& m) {
  const Integer bound = boost::multiprecision::sqrt(m / 2);
  Integer r0 = m, r1 = u % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || boost::multiprecision::abs(t1) > bound || boost::multiprecision::gcd(r1, t1) != 1) return std::nullopt;
  return Rational(r1, t1);
}

/// Incremental CRT over a family of scalar vectors with a fixed layout.
class ModularAccumulator {
 public:
  explicit ModularAccumulator(std::size_t size) : res_(size) {}

  void add(const std::vector<std::uint64_t>& image, std::uint64_t q) {
    if (modulus_ == 0) {
      for (std::size_t i = 0; i < res_.size(); ++i) res_[i] = image[i];
      modulus_ = q;
    } else {
      for (std::size_t i = 0; i < res_.size(); ++i) res_[i] = crt(res_[i], modulus_, image[i], q);
      modulus_ *= q;
    }
    ++count_;
  }
  int count() const { return count_; }

  std::optional<std::vector<Rational>> reconstruct() const {
    std::vector<Rational> out;
    out.reserve(res_.size());
    for (const auto& r : res_) {
      auto v = rational_reconstruct(r, modulus_);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

 private:
  std::vector<Integer> res_;
  Integer modulus_ = 0;
  int count_ = 0;
};

}  // namespace algdiff
