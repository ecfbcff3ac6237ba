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


#include <gtest/gtest.h>

#include "algdiff/bounds.hpp"

namespace algdiff {
namespace {

TEST(Eta, Table1Column) {
  const i64 expected[] = {2, 17, 69, 182, 380, 687, 1127, 1724, 2502, 3485};
  for (i64 d = 1; d <= 10; ++d) EXPECT_EQ(eta(d, d, d), expected[d - 1]) << d;
  EXPECT_THROW(eta(2, 2, 3), DomainError);
  EXPECT_THROW(eta(2, 2, 0), DomainError);
}

TEST(QuadraticBounds, Examples) {
  EXPECT_EQ(thm2_bounds(1, 2), (QuadraticBounds{6, 12, 18, 12}));
  EXPECT_EQ(thm2_bounds(2, 2), (QuadraticBounds{12, 12, 24, 12}));
  EXPECT_EQ(thm2_bounds(0, 1), (QuadraticBounds{0, 6, 6, 6}));
}

TEST(RefinedBound, Examples) {
  EXPECT_EQ(thm3_bound(DegreeProfile::make(2, 2, 4)), 11);
  EXPECT_EQ(thm3_bound(DegreeProfile::make(2, 2, 3)), 9);
  EXPECT_EQ(thm3_bound(DegreeProfile::make(1, 1, 1)), 2);
  EXPECT_THROW(DegreeProfile::make(2, 2, 5), DomainError);
  EXPECT_THROW(DegreeProfile::make(2, 0, 2), DomainError);
}

TEST(Presets, Examples) {
  using P = std::array<std::pair<i64, i64>, 3>;
  EXPECT_EQ(thm4_presets(1, 2), (P{{{16, 2}, {10, 10}, {6, 6}}}));
  EXPECT_EQ(thm4_presets(2, 2), (P{{{32, 2}, {20, 10}, {12, 12}}}));
  EXPECT_EQ(thm4_presets(1, 3), (P{{{36, 3}, {15, 15}, {11, 11}}}));
  EXPECT_THROW(thm4_presets(1, 1), HypothesisError);
}

TEST(MonomialCount, Examples) {
  EXPECT_EQ(monomial_count(2, 2, 2), 6);
  EXPECT_EQ(monomial_count(4, 2, 2), 9);
  EXPECT_EQ(monomial_count(1, 1, 1), 3);
  EXPECT_THROW(monomial_count(1, 2, 2), DomainError);
}

TEST(MonomialCount, MatchesEnumeration) {
  for (i64 dx = 0; dx <= 8; ++dx)
    for (i64 dy = 0; dy <= 8; ++dy)
      for (i64 d = std::max(dx, dy); d <= dx + dy + 1; ++d) {
        i64 n = 0;
        for (i64 a = 0; a <= dx; ++a)
          for (i64 b = 0; b <= dy; ++b) n += a + b <= d;
        EXPECT_EQ(monomial_count(d, dx, dy), n) << d << "," << dx << "," << dy;
      }
}

TEST(TableDimensions, Example) {
  EXPECT_EQ(table_rows(6, 12), 637);
  EXPECT_EQ(table_cols(1, 2, 6, 12), 540);
}

TEST(TableDimensions, ExcessPositive) {
  for (i64 dx = 1; dx <= 10; ++dx)
    for (i64 dy = 1; dy <= 10; ++dy) {
      const auto b = thm2_bounds(dx, dy);
      const i64 excess = table_rows(b.N_X, b.N_d) - table_cols(dx, dy, b.N_X, b.N_d);
      EXPECT_EQ(excess, table_excess_closed_form(dx, dy));
      EXPECT_GT(excess, 0);
    }
}

TEST(BoundSet, Examples) {
  const auto b = bound_set(1, 2, 6, 6);
  EXPECT_EQ(b.Sigma, 48);
  EXPECT_EQ(b.sigma, 48);
  // Without slack in the resultant argument one extra term is needed.
  EXPECT_EQ(bound_set(0, 2, 3, 1).sigma, 7);
  EXPECT_EQ(bound_set(1, 1, 3, 1).sigma, 4 - 2 + 3 + 1);
}

TEST(BoundSet, PresetsCoverCertification) {
  for (i64 dx = 1; dx <= 10; ++dx)
    for (i64 dy = 2; dy <= 10; ++dy)
      for (auto [bx, bd] : thm4_presets(dx, dy)) {
        const auto b = bound_set(dx, dy, bx, bd);
        EXPECT_GE(b.Sigma, b.sigma) << dx << "," << dy << " (" << bx << "," << bd << ")";
        EXPECT_GT(b.sigma, 0);
      }
}

}  // namespace
}  // namespace algdiff
