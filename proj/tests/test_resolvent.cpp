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

#include "algdiff/approx.hpp"
#include "algdiff/resolvent.hpp"
#include "test_util.hpp"

namespace algdiff {
namespace {

const RationalField kQ;
using QPoly = UniPoly<RationalField>;
using QOp = DiffOp<RationalField>;

QOp q_op(OpVar v, std::vector<QPoly> c) { return QOp(kQ, v, std::move(c)).canonical(); }

TEST(Wk, SquareRoot) {
  auto w = wk_sequence(test::parse_q("Y^2-(1+X)"), 2);
  EXPECT_EQ(w[0], test::parse_q("1"));
  EXPECT_EQ(w[1], test::parse_q("-2"));
  auto l = wk_sequence(test::parse_q("Y-X"), 2);
  EXPECT_EQ(l[0], test::parse_q("1"));
  EXPECT_TRUE(l[1].is_zero());
}

TEST(Wk, DegreeBoundsOnRandomInputs) {
  Rng rng(51);
  PrimeField f(9973);
  for (int dx = 1; dx <= 3; ++dx)
    for (int dy = 1; dy <= 3; ++dy) {
      auto p = random_bipoly(f, dx, dy, rng);
      auto w = wk_sequence(p, 5);  // asserts the bounds internally
      for (int k = 1; k <= 5; ++k) {
        if (w[k - 1].is_zero()) continue;
        EXPECT_LE(w[k - 1].degree_x(), (2 * dx - 1) * k - dx);
        EXPECT_LE(w[k - 1].degree_y(), 2 * (dy - 1) * k - dy + 2);
      }
    }
}

TEST(Wk, MatchesSeriesDerivatives) {
  // alpha^(k) = W_k(X, alpha) / P_Y(X, alpha)^(2k-1) on a lifted root.
  PrimeField f(9973);
  auto p = test::parse_p(9973, "(Y-1)*(Y-2) + X*Y^2 + 3*X");
  auto a = lift_scalar_root(p, f.from_int(1), 20).series;
  ScalarEmbed<PrimeField> emb{f};
  auto w = wk_sequence(p, 3);
  auto pya = eval_at_series(p.dy(), a, emb);
  auto d = a;
  for (int k = 1; k <= 3; ++k) {
    d = d.d_dx();
    auto lhs = d * eval_at_series(p.dy(), a, emb).truncate(d.precision());
    for (int e = 1; e < 2 * k - 1; ++e) lhs = lhs * pya.truncate(d.precision());
    EXPECT_EQ(lhs, eval_at_series(w[k - 1], a.truncate(d.precision()), emb)) << k;
  }
}

TEST(Resolvent, ExplicitRoot) {
  auto r = cockle_fraction(test::parse_q("Y-X^2"));
  EXPECT_EQ(r.trace.r, 1);
  EXPECT_EQ(r.op, q_op(OpVar::dx, {QPoly(kQ, {-2}), QPoly(kQ, {0, 1})}));
  EXPECT_EQ(r.op.to_theta().canonical(), q_op(OpVar::theta, {QPoly(kQ, {-2}), QPoly(kQ, {1})}));
  auto s = resolvent(test::parse_q("Y-X^2"), ResolventMethod::series, OpVar::theta);
  EXPECT_EQ(s.op, q_op(OpVar::theta, {QPoly(kQ, {-2}), QPoly(kQ, {1})}));
}

TEST(Resolvent, SquareRoot) {
  auto p = test::parse_q("Y^2-(1+X)");
  auto expected = q_op(OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {2, 2})});
  auto r = cockle_fraction(p);
  EXPECT_EQ(r.trace.r, 1);
  EXPECT_EQ(r.op, expected);
  EXPECT_EQ(cockle_series(p, Rational(0), 1).op, expected);
}

TEST(Resolvent, NotSeparable) {
  EXPECT_THROW(cockle_fraction(test::parse_q("(Y-X)^2")), HypothesisError);
  EXPECT_THROW(find_lucky_point(test::parse_q("(Y-X)^2"), LuckyMode::probabilistic), HypothesisError);
}

TEST(Resolvent, LuckyPoints) {
  EXPECT_EQ(rank_at_point(test::parse_q("Y^2-(1+X)"), Rational(0)), 1);
  EXPECT_EQ(rank_at_point(test::parse_q("Y^2-X"), Rational(0)), -1);
  EXPECT_EQ(rank_at_point(test::parse_q("Y^2-X"), Rational(1)), 1);
  auto lp = find_lucky_point(test::parse_q("Y^2-X"), LuckyMode::deterministic);
  EXPECT_EQ(lp.a, Rational(1));
  EXPECT_EQ(lp.r, 1);
  for (int a : {0, 3, 7}) EXPECT_EQ(rank_at_point(test::parse_q("Y-X"), Rational(a)), a == 0 ? 0 : 1);
  EXPECT_EQ(find_lucky_point(test::parse_q("Y-X"), LuckyMode::probabilistic).r, 1);
}

TEST(Resolvent, BackendsAgreeAndAnnihilate) {
  Rng rng(52);
  PrimeField f(9973);
  for (auto [dx, dy] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 2}}) {
    auto p = random_separable_bipoly(f, dx, dy, rng);
    auto fr = cockle_fraction(p);
    auto se = resolvent(p);
    EXPECT_EQ(fr.op, se.op) << dx << "," << dy;
    EXPECT_LE(se.op.order(), dy);
    EXPECT_LE(se.op.degree_x(), eta(dx, dy, se.op.order()));
    if (good_point(p, f.zero())) {
      auto phi = newton_lift(p, 200);
      AlgebraEmbed<PrimeField> emb{phi.series[0].parent()};
      EXPECT_TRUE(se.op.apply(phi.series, emb).is_zero());
    }
  }
}

TEST(Resolvent, RationalBackendsAgree) {
  Rng rng(53);
  for (auto [dx, dy] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}) {
    auto p = random_separable_bipoly(kQ, dx, dy, rng);
    EXPECT_EQ(cockle_fraction(p).op, resolvent(p).op);
  }
}

TEST(Resolvent, Table1Degrees) {
  Rng rng(54);
  PrimeField f(9973);
  for (auto [d, deg] : std::vector<std::pair<int, int>>{{1, 2}, {2, 10}, {3, 36}}) {
    auto p = random_separable_bipoly(f, d, d, rng);
    auto r = resolvent(p);
    EXPECT_EQ(r.op.order(), d);
    EXPECT_EQ(r.op.leading().degree(), deg);
  }
}

TEST(Pade, Examples) {
  TruncSeries<Rational> geo({1, 1, 1, 1, 1});
  auto a = pade(kQ, geo, 0, 1);
  EXPECT_EQ(a.num, QPoly(kQ, {1}));
  EXPECT_EQ(a.den, QPoly(kQ, {1, -1}));
  auto b = pade(kQ, TruncSeries<Rational>({1, 1, 0, 0, 0}), 1, 0);
  EXPECT_EQ(b.num, QPoly(kQ, {1, 1}));
  EXPECT_EQ(b.den, QPoly(kQ, {1}));
  TruncSeries<Rational> h({Rational(1, 2), Rational(-1, 2), Rational(1, 2), Rational(-1, 2), Rational(1, 2)});
  auto c = pade(kQ, h, 0, 1);
  EXPECT_EQ(c.num, QPoly(kQ, std::vector<Rational>{Rational(1, 2)}));
  EXPECT_EQ(c.den, QPoly(kQ, {1, 1}));
  EXPECT_THROW(pade(kQ, geo, 3, 3), DomainError);
}

TEST(Pade, RoundTrip) {
  Rng rng(55);
  PrimeField f(9973);
  for (int t = 0; t < 20; ++t) {
    auto num = random_unipoly(f, 6, rng), den = random_unipoly(f, 5, rng);
    if (is_zero(den.coeff(0))) continue;
    std::vector<Zp> dv(40, f.zero());
    for (std::size_t i = 0; i < den.size(); ++i) dv[i] = den[i];
    std::vector<Zp> nv(40, f.zero());
    for (std::size_t i = 0; i < num.size(); ++i) nv[i] = num[i];
    auto series = TruncSeries<Zp>(nv) * TruncSeries<Zp>(dv).inverse();
    auto r = pade(f, series.truncate(12), 6, 5);
    const auto s = f.one() / den.coeff(0);
    const auto g = gcd(num, den);
    EXPECT_EQ(r.num * den, num * r.den);
    EXPECT_EQ(r.den.coeff(0), f.one());
    if (g.degree() == 0) {
      EXPECT_EQ(r.den, s * den);
    }
  }
}

template <class K>
void check_ph(const K& k, const std::vector<TruncSeries<typename K::Elem>>& z, std::size_t bx,
              const PHSolution<K>& sol) {
  const std::size_t sigma = ph_order(z.size(), bx);
  std::vector<typename K::Elem> acc(sigma, k.zero());
  bool nonzero = false;
  for (std::size_t i = 0; i < z.size(); ++i) {
    ASSERT_LE(sol.ells[i].degree(), static_cast<int>(bx));
    nonzero |= !sol.ells[i].is_zero();
    for (std::size_t a = 0; a < sol.ells[i].size(); ++a)
      for (std::size_t t = a; t < sigma; ++t) acc[t] += sol.ells[i][a] * z[i][t - a];
  }
  EXPECT_TRUE(nonzero);
  for (const auto& v : acc) EXPECT_TRUE(is_zero(v));
}

TEST(HermitePade, SquareRootRelation) {
  auto s = lift_scalar_root(test::parse_q("Y^2-(1+X)"), Rational(1), 6).series;
  std::vector<TruncSeries<Rational>> z{s.truncate(4), s.d_dx().truncate(4)};
  auto sol = ph_approx(kQ, z, 1);
  check_ph(kQ, z, 1, sol);
  // Proportional to (-1, 2(1+X)).
  EXPECT_EQ(sol.ells[0] * QPoly(kQ, {2, 2}), sol.ells[1] * QPoly(kQ, {-1}));
}

TEST(HermitePade, DuplicateAndMonomials) {
  TruncSeries<Rational> f({3, 1, 4, 1, 5});
  auto sol = ph_approx(kQ, {f, f}, 1);
  EXPECT_EQ(sol.ells[0], -sol.ells[1]);
  auto m = ph_approx(kQ, {TruncSeries<Rational>({1, 0, 0}), TruncSeries<Rational>({0, 1, 0})}, 1);
  EXPECT_EQ(m.ells[0] * QPoly(kQ, {-1}), m.ells[1] * QPoly(kQ, {0, 1}));
}

TEST(HermitePade, RandomCongruence) {
  Rng rng(56);
  PrimeField f(9973);
  for (int t = 0; t < 5; ++t) {
    std::vector<TruncSeries<Zp>> z;
    for (int i = 0; i < 4; ++i) {
      std::vector<Zp> c;
      for (int j = 0; j < 40; ++j) c.push_back(random_elem(f, rng));
      z.emplace_back(c);
    }
    check_ph(f, z, 7, ph_approx(f, z, 7));
  }
}

TEST(HermitePade, AlgebraNoSplit) {
  auto phi = newton_lift(test::parse_q("Y^2-(1+X)"), 6).series;
  std::vector<TruncSeries<AlgElem<RationalField>>> z{phi.truncate(4), phi.d_dx().truncate(4)};
  auto sol = ph_approx_algebra(z, 1);
  EXPECT_EQ(sol.restarts, 0);
  EXPECT_EQ(sol.algebra.modulus(), QPoly(kQ, {-1, 0, 1}));
  // l_0 = -c, l_1 = 2c(1+X) for a scalar c of A.
  auto c = sol.ells[1][0];
  EXPECT_EQ(sol.ells[0][0], Rational(-1, 2) * c);
  EXPECT_EQ(sol.ells[1][1], c);
}

TEST(HermitePade, AlgebraSplitsOnZeroDivisor) {
  QuotientAlgebra<RationalField> a(QPoly(kQ, {-1, 0, 1}));
  auto one = a.one(), y = a.y();
  std::vector<AlgElem<RationalField>> c0{one + y, y, one, y + y, one}, c1{one, one + y, y, one, y};
  std::vector<TruncSeries<AlgElem<RationalField>>> z{TruncSeries<AlgElem<RationalField>>(c0),
                                                     TruncSeries<AlgElem<RationalField>>(c1)};
  auto sol = ph_approx_algebra(z, 1);
  EXPECT_EQ(sol.restarts, 1);
  EXPECT_EQ(sol.algebra.modulus(), QPoly(kQ, {-1, 1}));
  // Re-verify the congruence over the final algebra.
  for (std::size_t t = 0; t < 3; ++t) {
    auto acc = sol.algebra.zero();
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t b = 0; b <= 1 && b <= t; ++b) acc += sol.ells[i][b] * z[i][t - b].project(sol.algebra);
    EXPECT_TRUE(acc.is_zero());
  }
}

TEST(HermitePade, DegreeOneAlgebraMatchesField) {
  PrimeField f(9973);
  Rng rng(57);
  QuotientAlgebra<PrimeField> a(UniPoly<PrimeField>(f, {5, 1}));
  std::vector<TruncSeries<Zp>> zk;
  std::vector<TruncSeries<AlgElem<PrimeField>>> za;
  for (int i = 0; i < 3; ++i) {
    std::vector<Zp> c;
    std::vector<AlgElem<PrimeField>> ca;
    for (int j = 0; j < 20; ++j) {
      c.push_back(random_elem(f, rng));
      ca.push_back(a.from_scalar(c.back()));
    }
    zk.emplace_back(c);
    za.emplace_back(ca);
  }
  auto sk = ph_approx(f, zk, 4);
  auto sa = ph_approx_algebra(za, 4);
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b <= 4; ++b) EXPECT_EQ(sa.ells[i][b].decompose()[0], sk.ells[i].coeff(b));
}

TEST(Modular, CrtAndReconstruction) {
  const Integer m = Integer(1000003) * Integer(999983);
  Integer x = crt(Integer(5), Integer(1000003), 7, 999983);
  EXPECT_EQ(x % 1000003, 5);
  EXPECT_EQ(x % 999983, 7);
  // -22/7 mod m, reconstructed.
  const PrimeField f1(1000003), f2(999983);
  const auto a = f1.from_rational(Rational(-22, 7)), b = f2.from_rational(Rational(-22, 7));
  auto u = crt(Integer(a.value()), Integer(1000003), b.value(), 999983);
  EXPECT_EQ(rational_reconstruct(u, m), Rational(-22, 7));
  // Heights beyond sqrt(m/2) cannot come back.
  const auto big1 = f1.from_rational(Rational(10000019, 3)), big2 = f2.from_rational(Rational(10000019, 3));
  auto w = crt(Integer(big1.value()), Integer(1000003), big2.value(), 999983);
  EXPECT_NE(rational_reconstruct(w, m), std::optional<Rational>(Rational(10000019, 3)));
  PrimeStream ps;
  const auto q1 = ps.next(), q2 = ps.next();
  EXPECT_GT(q1, q2);
  EXPECT_TRUE(is_prime_u64(q1));
  EXPECT_LT(q1, std::uint64_t{1} << 62);
}

TEST(Certificate, AnnihilatesAllRoots) {
  auto p = test::parse_q("Y^2-(1+X)");
  EXPECT_TRUE(annihilates_all_roots(q_op(OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {2, 2})}), p));
  EXPECT_FALSE(annihilates_all_roots(q_op(OpVar::dx, {QPoly(kQ, {-1}), QPoly(kQ, {1, 2})}), p));
  EXPECT_TRUE(annihilates_all_roots(q_op(OpVar::theta, {QPoly(kQ, {-2}), QPoly(kQ, {1})}), test::parse_q("Y-X^2")));
  // A multiple of the resolvent still annihilates; a truncated one does not.
  PrimeField f(9973);
  Rng rng(58);
  auto q = random_separable_bipoly(f, 2, 3, rng);
  auto op = resolvent(q).op;
  EXPECT_TRUE(annihilates_all_roots(op.mul_x_power(2), q));
  auto cs = op.coeffs();
  cs[0] = cs[0] + UniPoly<PrimeField>(f, {1});
  EXPECT_FALSE(annihilates_all_roots(DiffOp<PrimeField>(f, OpVar::dx, cs), q));
}

TEST(Resolvent, RationalSeriesMatchesDirectAndFraction) {
  Rng rng(59);
  for (auto [dx, dy] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}) {
    auto p = random_separable_bipoly(kQ, dx, dy, rng);
    const auto lp = find_lucky_point(p, LuckyMode::probabilistic);
    auto modular = cockle_series(p, lp.a, lp.r);
    auto direct = cockle_series_direct(p, lp.a, lp.r);
    EXPECT_EQ(modular.op, direct.op);
    EXPECT_EQ(modular.trace.relation, direct.trace.relation);
    EXPECT_EQ(modular.trace.v_at_point, direct.trace.v_at_point);
    EXPECT_EQ(modular.op, cockle_fraction(p).op);
  }
}

}  // namespace
}  // namespace algdiff
