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

#include "algdiff/algtodiff.hpp"
#include "algdiff/resolvent.hpp"
#include "algdiff/telescope.hpp"
#include "test_util.hpp"

namespace algdiff {
namespace {

const RationalField kQ;
using QPoly = UniPoly<RationalField>;
using QBi = BiPoly<RationalField>;

// Applies op to every conjugate root over K[Y]/(P(0, Y)) at precision n.
template <Field K>
bool annihilates_roots(const DiffOp<K>& op, const BiPoly<K>& p, std::size_t n) {
  const auto phi = newton_lift(p, n + static_cast<std::size_t>(op.order()));
  AlgebraEmbed<K> emb{phi.series[0].parent()};
  return op.apply(phi.series, emb).truncate(n).is_zero();
}

TEST(DerivativeTable, QuotientRule) {
  auto p = test::parse_q("Y-X");
  auto t = derivative_table(p, 0, 2);
  // dY F = -X/(Y-X)^2, stored at level P^3 as -X (Y-X).
  EXPECT_EQ(t.numerators[t.jk_index(0, 1)], test::parse_q("-X*(Y-X)"));
  EXPECT_EQ(t.numerators[t.jk_index(0, 0)], test::parse_q("Y*(Y-X)^2"));
  // dX F = Y/(Y-X)^2.
  EXPECT_EQ(t.numerators[t.jk_index(1, 0)], test::parse_q("Y*(Y-X)"));
}

TEST(DerivativeTable, Dimensions) {
  PrimeField f(9973);
  Rng rng(61);
  auto p = random_bipoly(f, 1, 2, rng);
  auto t = derivative_table(p, 6, 12);
  EXPECT_EQ(static_cast<i64>(t.rows()), table_rows(6, 12));
  EXPECT_EQ(static_cast<i64>(t.cols()), table_cols(1, 2, 6, 12));
  EXPECT_EQ(t.rows(), 637u);
  EXPECT_EQ(t.cols(), 540u);
  auto par = derivative_table(p, 6, 12, 3);
  EXPECT_EQ(par.numerators, t.numerators);
}

TEST(DerivativeTable, RowsAreDerivativesOnSeries) {
  // Independent check at a numeric point: evaluate N_jk / P^(N_d+1) against
  // the rational function obtained by repeated quotient rule over K(X)[Y].
  PrimeField f(9973);
  auto p = test::parse_p(9973, "Y^2 - X*Y - 3 + X^2");
  auto t = derivative_table(p, 0, 3);
  const auto x0 = f.from_int(5), y0 = f.from_int(7);
  const auto pv = p.eval(x0, y0);
  // Finite field derivatives through truncated Taylor expansion in (s, t):
  // F(x0 + s, y0 + u) = sum c_ab s^a u^b, so dX^j dY^k F = j! k! c_jk.
  const int n = 4;
  auto ps = p.shift_x(x0);
  std::vector<std::vector<Zp>> rows;  // P(x0 + s, y0 + u) as a bivariate in (s, u)
  std::vector<UniPoly<PrimeField>> cy;
  for (int j = 0; j <= ps.degree_y(); ++j) cy.push_back(ps.coeff_y(j));
  // Substitute Y = y0 + u.
  BiPoly<PrimeField> shifted(f);
  for (int j = 0; j <= ps.degree_y(); ++j) {
    auto term = BiPoly<PrimeField>::from_uni(cy[j], true);
    auto lin = BiPoly<PrimeField>(f, {{y0, f.one()}});
    shifted += term * lin.pow(j);
  }
  auto num = BiPoly<PrimeField>::y(f) * p.dy();
  auto nums = num.shift_x(x0);
  BiPoly<PrimeField> nshift(f);
  for (int j = 0; j <= nums.degree_y(); ++j) {
    auto lin = BiPoly<PrimeField>(f, {{y0, f.one()}});
    nshift += BiPoly<PrimeField>::from_uni(nums.coeff_y(j), true) * lin.pow(j);
  }
  // Series of 1/shifted in two variables truncated at total degree n.
  auto coeff = [&](const BiPoly<PrimeField>& b, int i, int j) { return b.coeff(i, j); };
  std::vector<std::vector<Zp>> inv(n + 1, std::vector<Zp>(n + 1, f.zero()));
  inv[0][0] = f.one() / coeff(shifted, 0, 0);
  for (int s = 1; s <= n; ++s)
    for (int a = 0; a <= s; ++a) {
      const int b = s - a;
      Zp acc = f.zero();
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j)
          if (i + j > 0) acc += coeff(shifted, i, j) * inv[a - i][b - j];
      inv[a][b] = -acc * inv[0][0];
    }
  EXPECT_EQ(inv[0][0], f.one() / pv);
  Zp fact[5] = {f.one(), f.one(), f.from_int(2), f.from_int(6), f.from_int(24)};
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; j + k <= 3; ++k) {
      Zp c = f.zero();
      for (int i = 0; i <= j; ++i)
        for (int l = 0; l <= k; ++l) c += coeff(nshift, i, l) * inv[j - i][k - l];
      const auto& g = t.numerators[t.jk_index(j, k)];
      Zp pw = f.one();
      for (int e = 0; e < 4; ++e) pw *= pv;
      EXPECT_EQ(g.eval(x0, y0) / pw, fact[j] * fact[k] * c) << j << "," << k;
    }
}

TEST(FindLambda, ExplicitRoot) {
  auto r = find_lambda(test::parse_q("Y-X"), 3, 6);
  EXPECT_LE(r.A.order(), 6);
  EXPECT_LE(r.A.degree_x(), 3);
  EXPECT_TRUE(annihilates_roots(r.A, test::parse_q("Y-X"), 30));
  EXPECT_TRUE(verify_associated(r.A, test::parse_q("Y-X")));
}

TEST(FindLambda, SquareRoot) {
  PrimeField f(9973);
  auto p = test::parse_p(9973, "Y^2-(1+X)");
  auto b = thm2_bounds(1, 2);
  auto r = find_lambda(p, static_cast<int>(b.N_X), static_cast<int>(b.N_d));
  EXPECT_TRUE(annihilates_roots(r.A, p, 80));
  EXPECT_TRUE(verify_associated(r.A, p));
}

TEST(FindLambda, SmallBoundsFail) {
  EXPECT_THROW(find_lambda(test::parse_q("Y^2-(1+X)"), 0, 0), DomainError);
}

TEST(FindTheta, ExplicitRoot) {
  auto p = test::parse_q("Y-X^2");
  auto r = find_theta_operator(p, 2);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(verify_associated(r->op, p));
  EXPECT_TRUE(annihilates_roots(r->op, p, 20));
  // Telescoping identity A F = dY(G / P^(d+2)), checked on numerators.
  const int d = 2;
  const auto py = p.dy();
  QBi lhs(kQ);
  QBi n = QBi::y(kQ) * py;
  for (int j = 0; j <= r->raw.order(); ++j) {
    if (j > 0) n = (n.dx() * p - kQ.from_int(j) * n * p.dx()).shift_up(1, 0);
    lhs += QBi::from_uni(r->raw.coeffs()[j], true) * n * p.pow(d + 2 - j);
  }
  QBi rhs = r->G.dy() * p - kQ.from_int(d + 2) * r->G * py;
  EXPECT_EQ(lhs, rhs);
  // F = 1 + X^2/(Y - X^2) has a part polynomial in Y that no dY-derivative
  // of G/P^(d+2) produces, so theta - 2 also needs the right factor theta.
  auto m = minimal_theta_operator(p, 2);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->first, 2);
  EXPECT_EQ(m->second.op, DiffOp<RationalField>(kQ, OpVar::theta, {QPoly(kQ, {0}), QPoly(kQ, {-2}), QPoly(kQ, {1})}));
}

TEST(FindTheta, NotFoundAtZero) {
  EXPECT_FALSE(find_theta_operator(test::parse_q("Y^2-(1+X)"), 0).has_value());
}

TEST(FindTheta, DenseTwoTwoAtBound) {
  PrimeField f(9973);
  Rng rng(62);
  auto p = random_separable_bipoly(f, 2, 2, rng);
  const int d = static_cast<int>(thm3_bound(DegreeProfile::of(p)));
  EXPECT_EQ(d, 11);
  auto r = find_theta_operator(p, d);
  ASSERT_TRUE(r.has_value());
  EXPECT_LE(r->op.order(), d);
  EXPECT_LE(r->op.degree_x(), d);
  EXPECT_TRUE(verify_associated(r->op, p));
}

TEST(Verify, Examples) {
  auto sq = test::parse_q("Y^2-(1+X)");
  auto res = cockle_fraction(sq).op;
  EXPECT_TRUE(verify_associated(res, sq));
  EXPECT_TRUE(verify_associated(res.mul_x_power(1), sq));
  EXPECT_TRUE(verify_associated(res.to_theta(), sq));
  EXPECT_FALSE(verify_associated(DiffOp<RationalField>(kQ, OpVar::theta, {QPoly(kQ, {-3}), QPoly(kQ, {1})}),
                                 test::parse_q("Y-X^2")));
  // A point where the roots collide forces a shift before lifting.
  auto bad = test::parse_q("Y^2-X");
  EXPECT_TRUE(verify_associated(cockle_fraction(bad).op, bad));
  EXPECT_FALSE(verify_associated(DiffOp<RationalField>(kQ, OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {0, 1})}), bad));
}

TEST(AlgToDiff, Heuristics) {
  PrimeField f(9973);
  auto a = heuristic_params(random_bipoly(f, 1, 2, *std::make_unique<Rng>(1)), HeuristicFlavor::thm2);
  EXPECT_EQ(a.B_X, 18);
  EXPECT_EQ(a.B_d, 12);
  auto b = heuristic_params(test::parse_q("Y-X"), HeuristicFlavor::thm2);
  EXPECT_EQ(b.B_X, 9);
  EXPECT_EQ(b.B_d, 6);
  auto c = heuristic_params(test::parse_q("X^2*Y^2 + X + Y + 1"), HeuristicFlavor::thm3);
  EXPECT_EQ(c.B_X, 11);
  EXPECT_EQ(c.B_d, 11);
}

TEST(AlgToDiff, SquareRootPresetThree) {
  auto p = test::parse_q("Y^2-(1+X)");
  auto pr = preset_params(p, 3, OpVar::dx);
  EXPECT_EQ(pr.B_X, 6);
  EXPECT_EQ(pr.B_d, 6);
  auto r = alg_to_diff(p, pr.B_X, pr.B_d, OpVar::dx, true);
  EXPECT_TRUE(r.verified);
  EXPECT_LE(r.op.order(), 6);
  EXPECT_LE(r.op.degree_x(), 6);
  EXPECT_TRUE(annihilates_roots(r.op, p, 60));
}

TEST(AlgToDiff, RejectsDegreeOneInY) {
  EXPECT_THROW(alg_to_diff(test::parse_q("Y-X^2"), 4, 4), HypothesisError);
  EXPECT_THROW(alg_to_diff_prob(test::parse_q("Y-X^2"), 4, 4), HypothesisError);
}

TEST(AlgToDiff, CubicPresetTwo) {
  auto p = test::parse_p(9973, "Y^3 - X*Y - 1");
  auto pr = preset_params(p, 2);
  EXPECT_EQ(pr.B_X, 15);
  EXPECT_EQ(pr.B_d, 15);
  auto r = alg_to_diff(p, pr.B_X, pr.B_d, OpVar::theta, true);
  EXPECT_TRUE(r.verified);
  EXPECT_LE(r.op.order(), 15);
  EXPECT_LE(r.op.degree_x(), 15);
  // The resolvent kills the same roots; both operators annihilate the lift.
  EXPECT_TRUE(annihilates_roots(cockle_fraction(p).op, p, 100));
  EXPECT_TRUE(annihilates_roots(r.op, p, 100));
}

TEST(AlgToDiff, Probabilistic) {
  auto p = test::parse_q("Y^2-(1+X)");
  auto a = alg_to_diff_prob(p, 6, 6, OpVar::theta, 7);
  auto b = alg_to_diff_prob(p, 6, 6, OpVar::theta, 7);
  EXPECT_TRUE(a.verified);
  EXPECT_EQ(a.op, b.op);
  EXPECT_THROW(alg_to_diff_prob(test::parse_p(2, "Y^2+X*Y+1"), 2, 2), DomainError);
}

TEST(AlgToDiff, SplitsOnReducibleFibre) {
  // P(0, Y) = Y^2 - 1 splits over Q; the solver may restart on a factor and
  // still returns a certified operator.
  auto p = test::parse_q("Y^2 - 1 - X");
  auto r = alg_to_diff(p, 6, 6, OpVar::theta, true);
  EXPECT_TRUE(r.verified);
  EXPECT_GE(r.algebra_factor.degree(), 1);
}

TEST(AlgToDiff, HeuristicCertified) {
  PrimeField f(9973);
  Rng rng(63);
  auto p = random_separable_bipoly(f, 1, 2, rng);
  auto r = alg_to_diff_heuristic(p, HeuristicFlavor::thm3);
  EXPECT_EQ(r.mode, AlgToDiffMode::heuristic);
  if (r.verified) {
    EXPECT_LE(r.op.order(), r.params.B_d);
    EXPECT_LE(r.op.degree_x(), r.params.B_X);
  } else {
    RecordProperty("heuristic_uncertified", 1);
  }
}

}  // namespace
}  // namespace algdiff
