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


// Shared helpers for the unit and acceptance suites.

#pragma once

#include <string_view>

#include "algdiff/bipoly.hpp"
#include "algdiff/parse.hpp"
#include "algdiff/ratfunc.hpp"

namespace algdiff::test {

inline BiPoly<RationalField> parse_q(std::string_view s) { return parse_bipoly(RationalField{}, s); }
inline BiPoly<PrimeField> parse_p(std::uint64_t p, std::string_view s) { return parse_bipoly(PrimeField(p), s); }

/// gcd of P and P_Y computed over K(X) by the Euclidean algorithm; an oracle
/// independent of the resultant code.
template <Field K>
bool gcd_y_trivial_impl(const BiPoly<K>& p) {
  RatFuncField<K> f(p.field());
  auto as_poly = [&](const BiPoly<K>& b) {
    std::vector<RatFunc<K>> c;
    for (int j = 0; j <= b.degree_y(); ++j) c.push_back(f.from_poly(b.coeff_y(j)));
    return UniPoly<RatFuncField<K>>(f, c);
  };
  return gcd(as_poly(p), as_poly(p.dy())).degree() == 0;
}

}  // namespace algdiff::test

namespace algdiff {
template <Field K>
bool gcd_y_trivial(const BiPoly<K>& p) {
  return test::gcd_y_trivial_impl(p);
}
}  // namespace algdiff
