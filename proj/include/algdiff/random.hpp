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

// Seeded sampling. The generator is std::mt19937_64 and integers in [0, n)
// are drawn by rejection of the low 2^64 mod n outputs followed by x mod n;
// both steps are fully specified, so a seed replays identically on any
// conforming standard library.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "algdiff/bipoly.hpp"
#include "algdiff/field.hpp"

namespace algdiff {

class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64 + rejection sampling";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t reject = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= reject) return x % n;
    }
  }
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 gen_;
};

/// Default height of random integer coefficients over Q.
inline constexpr std::int64_t kRationalSampleHeight = 9;

/// Uniform field element (over Q: a uniform integer of bounded height).
template <Field K>
typename K::Elem random_elem(const K& k, Rng& rng) {
  if constexpr (is_prime_field_v<K>)
    return Zp::raw(rng.below(k.modulus()), k.modulus());
  else
    return k.from_int(rng.between(-kRationalSampleHeight, kRationalSampleHeight));
}

template <Field K>
typename K::Elem random_nonzero(const K& k, Rng& rng) {
  for (;;) {
    auto v = random_elem(k, rng);
    if (!is_zero_elem(v)) return v;
  }
}

template <Field K>
UniPoly<K> random_unipoly(const K& k, int degree, Rng& rng) {
  std::vector<typename K::Elem> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_elem(k, rng));
  return UniPoly<K>(k, std::move(c));
}

/// Dense polynomial with every coefficient of X^i Y^j (i <= dx, j <= dy)
/// drawn uniformly; redrawn until the bidegree is exact.
template <Field K>
BiPoly<K> random_bipoly(const K& k, int dx, int dy, Rng& rng) {
  for (;;) {
    std::vector<std::vector<typename K::Elem>> rows(dx + 1);
    for (auto& r : rows)
      for (int j = 0; j <= dy; ++j) r.push_back(random_elem(k, rng));
    BiPoly<K> p(k, rows);
    if (p.degree_x() == dx && p.degree_y() == dy) return p;
  }
}

/// Random dense polynomial satisfying separability in Y (nonzero
/// discriminant). Reports how many draws were rejected.
template <Field K>
BiPoly<K> random_separable_bipoly(const K& k, int dx, int dy, Rng& rng, int* rejected = nullptr) {
  int rej = 0;
  for (;;) {
    BiPoly<K> p = random_bipoly(k, dx, dy, rng);
    if (dy >= 1 && !discriminant_y(p).is_zero()) {
      if (rejected) *rejected = rej;
      return p;
    }
    ++rej;
  }
}

}  // namespace algdiff
