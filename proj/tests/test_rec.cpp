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

#include "algdiff/rec.hpp"
#include "test_util.hpp"

namespace algdiff {
namespace {

const RationalField kQ;
using QPoly = UniPoly<RationalField>;
using QOp = DiffOp<RationalField>;

TEST(ToRecurrence, Examples) {
  auto a = diffop_to_recurrence(QOp(kQ, OpVar::theta, {QPoly(kQ, {-2}), QPoly(kQ, {1})}));
  ASSERT_EQ(a.order(), 0);
  EXPECT_EQ(a.r[0], QPoly(kQ, {-2, 1}));
  auto b = diffop_to_recurrence(QOp(kQ, OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {2, 2})}));
  ASSERT_EQ(b.order(), 1);
  EXPECT_EQ(b.r[0], QPoly(kQ, {-1, 2}));
  EXPECT_EQ(b.r[1], QPoly(kQ, {2, 2}));
  std::vector<Rational> u{1, Rational(1, 2), Rational(-1, 8), Rational(1, 16)};
  for (int n = 0; n < 3; ++n) EXPECT_EQ(b.residual(u, n), 0);
  auto c = diffop_to_recurrence(QOp(kQ, OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {0, 1})}));
  ASSERT_EQ(c.order(), 0);
  EXPECT_EQ(c.r[0], QPoly(kQ, {-1, 1}));
}

TEST(ToRecurrence, NormalizationOverPrimeField) {
  PrimeField f(9973);
  DiffOp<PrimeField> op(f, OpVar::dx, {UniPoly<PrimeField>(f, {-1}), UniPoly<PrimeField>(f, {2, 2})});
  auto r = diffop_to_recurrence(op);
  EXPECT_EQ(r.leading().lead(), f.one());
}

TEST(IntegerRoot, Examples) {
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {-2, 1})), 2);
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {-3, 1}) * QPoly(kQ, {5, 1})), 3);
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {1, 0, 1})), -1);
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {0, 1}) * QPoly(kQ, {1, 1})), 0);
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {-3, 2}) * QPoly(kQ, {-7, 1}) * QPoly(kQ, {-7, 1})), 7);
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {-1, 3})), -1);
  EXPECT_EQ(largest_nonneg_int_root(QPoly(kQ, {-1000003, 1}) * QPoly(kQ, {4, 1})), 1000003);
  EXPECT_EQ(largest_nonneg_int_root(UniPoly<PrimeField>(PrimeField(7), {-2, 1})), -1);
}

TEST(IntegerRoot, MatchesScan) {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    QPoly f(kQ, {1});
    const int k = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < k; ++i) f = f * QPoly(kQ, {rng.between(-20, 20), rng.between(1, 3)});
    std::int64_t expect = -1;
    for (std::int64_t n = 0; n <= 25; ++n)
      if (f(Rational(n)) == 0) expect = n;
    EXPECT_EQ(largest_nonneg_int_root(f), expect) << f.to_string("n");
  }
}

TEST(Progression, Examples) {
  EXPECT_EQ(eval_progression(QPoly(kQ, {0, 0, 1}), 0, 4), (std::vector<Rational>{0, 1, 4, 9}));
  EXPECT_EQ(eval_progression(QPoly(kQ, {1, 2}), 5, 3), (std::vector<Rational>{11, 13, 15}));
  EXPECT_EQ(eval_progression(QPoly(kQ, {3, 1, 4}), 2, 1), (std::vector<Rational>{21}));
}

TEST(Progression, MatchesHorner) {
  Rng rng(72);
  PrimeField f(9973);
  for (int t = 0; t < 20; ++t) {
    auto r = random_unipoly(f, static_cast<int>(rng.below(9)), rng);
    const std::int64_t start = rng.between(-50, 20000);
    auto v = eval_progression(r, start, 200);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], r(f.from_int(start + static_cast<std::int64_t>(i))));
  }
}

TEST(Unroll, SquareRoot) {
  auto rec = diffop_to_recurrence(QOp(kQ, OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {2, 2})}));
  ExpansionPlan<RationalField, Rational> plan{rec, largest_nonneg_int_root(rec.leading()), {1}, 8};
  auto u = unroll(plan);
  std::vector<Rational> expect{1, Rational(1, 2), Rational(-1, 8), Rational(1, 16), Rational(-5, 128),
                               Rational(7, 256), Rational(-21, 1024), Rational(33, 2048)};
  EXPECT_EQ(u, expect);
  // Independent: the lifted root of Y^2 - (1 + X).
  EXPECT_EQ(u, lift_scalar_root(test::parse_q("Y^2-(1+X)"), Rational(1), 8).series.coeffs());
}

TEST(Unroll, OrderZero) {
  auto rec = diffop_to_recurrence(QOp(kQ, OpVar::theta, {QPoly(kQ, {-2}), QPoly(kQ, {1})}));
  const auto rho = largest_nonneg_int_root(rec.leading());
  EXPECT_EQ(rho, 2);
  ExpansionPlan<RationalField, Rational> plan{rec, rho, {0, 0, Rational(5)}, 7};
  EXPECT_EQ(unroll(plan), (std::vector<Rational>{0, 0, 5, 0, 0, 0, 0}));
  ExpansionPlan<RationalField, Rational> shortplan{rec, rho, {0, 0}, 7};
  EXPECT_THROW(unroll(shortplan), DomainError);
}

TEST(Expand, SquareRootBothWays) {
  auto p = test::parse_q("Y^2-(1+X)");
  ExpandOptions<RationalField> rec_opts, newton_opts;
  newton_opts.via = ExpandVia::newton;
  auto a = expand_scalar(p, Rational(1), 6, rec_opts);
  auto b = expand_scalar(p, Rational(1), 6, newton_opts);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_EQ(a.coeffs[2], Rational(-1, 8));
  // Fewer terms than the initial segment: pure prefix.
  auto c = expand_scalar(p, Rational(1), 1, rec_opts);
  EXPECT_EQ(c.coeffs, std::vector<Rational>{1});
}

TEST(Expand, LowerBoundWitness) {
  PrimeField f(9973);
  auto p = test::parse_p(9973, "Y^5-Y+X^5");
  auto e = expand_scalar(p, f.zero(), 30);
  ASSERT_EQ(e.coeffs.size(), 30u);
  for (int i = 0; i < 30; ++i) EXPECT_EQ(e.coeffs[i], (i == 5 || i == 25) ? f.one() : f.zero()) << i;
  ASSERT_TRUE(e.rec.has_value());
  EXPECT_GE(e.rec->order(), 20);
}

TEST(Expand, RandomMatchesNewton) {
  PrimeField f(9973);
  Rng rng(73);
  for (int t = 0; t < 3; ++t) {
    auto p = random_separable_bipoly(f, 1, 3, rng);
    if (!good_point(p, f.zero())) continue;
    ExpandOptions<PrimeField> nw;
    nw.via = ExpandVia::newton;
    auto a = expand_algebra(p, 300);
    auto b = expand_algebra(p, 300, nw);
    EXPECT_EQ(a.coeffs, b.coeffs);
    for (std::int64_t n = 0; n + a.rec->order() < 300; ++n)
      if (!is_zero(a.rec->leading()(f.from_int(n)))) {
        EXPECT_TRUE(a.rec->residual(a.coeffs, n).is_zero());
      }
  }
}

TEST(Expand, PatchesAliasedIndices) {
  // Over F_101 the leading coefficient vanishes periodically in n.
  PrimeField f(101);
  auto p = test::parse_p(101, "Y^2-(1+X)");
  ExpandOptions<PrimeField> nw;
  nw.via = ExpandVia::newton;
  auto a = expand_scalar(p, f.one(), 1000);
  auto b = expand_scalar(p, f.one(), 1000, nw);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_GT(a.patches, 0);
}

TEST(Expand, RoundTripThetaAndDx) {
  PrimeField f(9973);
  auto p = test::parse_p(9973, "Y^3 - X*Y - 1 - X^2");
  auto op = resolvent(p).op;
  auto u = newton_lift(p, 200).series.coeffs();
  for (const auto& form : {op.to_theta(), op.to_dx()}) {
    auto rec = diffop_to_recurrence(form);
    for (std::int64_t n = 0; n + rec.order() < 200; ++n) EXPECT_TRUE(rec.residual(u, n).is_zero());
  }
}

TEST(Expand, AlgToDiffSource) {
  PrimeField f(9973);
  auto p = test::parse_p(9973, "Y^2 - 1 - X - 3*X*Y");
  ExpandOptions<PrimeField> o, nw;
  o.source = OperatorSource::algtodiff;
  nw.via = ExpandVia::newton;
  EXPECT_EQ(expand_algebra(p, 200, o).coeffs, expand_algebra(p, 200, nw).coeffs);
}

}  // namespace
}  // namespace algdiff
