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

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "algdiff/algdiff.hpp"
#include "test_util.hpp"

#ifndef ALGDIFF_CLI_PATH
#error "ALGDIFF_CLI_PATH must name the algdiff binary"
#endif

namespace algdiff {
namespace {

const RationalField kQ;

TEST(Json, PolynomialRoundTrip) {
  auto p = test::parse_q("Y^2 - X*(1+X) + 3*X^3*Y");
  auto j = poly_to_json(p);
  EXPECT_EQ(j["field"]["kind"], "rational");
  EXPECT_EQ(j["coeffs"][1][0], "-1");
  EXPECT_EQ(j["coeffs"][3][1], "3");
  EXPECT_EQ(poly_from_json(kQ, Json::parse(j.dump())), p);
  BiPoly<RationalField> frac(kQ, {{Rational(0), Rational(1)}, {Rational(-3, 7)}});
  auto jf = poly_to_json(frac);
  EXPECT_EQ(jf["coeffs"][1][0], "-3/7");
  EXPECT_EQ(poly_from_json(kQ, jf), frac);
  PrimeField f(9973);
  auto q = test::parse_p(9973, "Y^3 - 5*X*Y + 9972");
  auto jq = poly_to_json(q);
  EXPECT_EQ(jq["field"]["modulus"], 9973);
  EXPECT_EQ(poly_from_json(f, jq), q);
}

TEST(Json, OperatorRoundTrip) {
  using QPoly = UniPoly<RationalField>;
  DiffOp<RationalField> op(kQ, OpVar::dx, {QPoly(kQ, std::vector<Rational>{Rational(-1, 2)}), QPoly(kQ, {1, 1})});
  auto j = op_to_json(op);
  EXPECT_EQ(j["var"], "Dx");
  EXPECT_EQ(j["coeffs"][0][0], "-1/2");
  EXPECT_EQ(op_from_json(kQ, j), op);
}

TEST(Json, Rejections) {
  EXPECT_THROW(field_from_json(Json{{"kind", "prime"}, {"modulus", 10}}), DomainError);
  EXPECT_THROW(field_from_json(Json{{"kind", "complex"}}), ParseError);
  EXPECT_THROW(poly_from_json(kQ, Json{{"coeffs", 3}}), ParseError);
  EXPECT_THROW(poly_from_json(kQ, Json{{"coeffs", {{1.5}}}}), ParseError);
  EXPECT_THROW(op_from_json(kQ, Json{{"var", "Dy"}, {"coeffs", Json::array()}}), ParseError);
  auto j = poly_to_json(test::parse_p(101, "Y-X"));
  EXPECT_THROW(poly_from_json(kQ, j), DomainError);
}

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(ALGDIFF_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe.release());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "algdiff_" + name; }

TEST(Cli, ResolventExample) {
  auto r = cli("resolvent --rational --expr \"Y^2-(1+X)\" --var dx");
  ASSERT_EQ(r.status, 0);
  auto op = op_from_json(kQ, Json::parse(r.out));
  auto expect = resolvent(test::parse_q("Y^2-(1+X)")).op;
  EXPECT_EQ(op, expect);
  EXPECT_EQ(op.order(), 1);
}

TEST(Cli, BoundsExample) {
  auto r = cli("bounds --dx 2 --dy 2 --d 4");
  ASSERT_EQ(r.status, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["eta"]["r"], 2);
  EXPECT_EQ(j["eta"]["value"], 17);
  EXPECT_EQ(j["thm3"], 11);
  EXPECT_EQ(j["thm2"]["N_X"], 12);
  EXPECT_EQ(j["thm4"].size(), 3u);
}

TEST(Cli, ExpandWitness) {
  auto r = cli("expand --modulus 9973 --expr \"Y^5-Y+X^5\" --root 0 --terms 30 --via recurrence --json");
  ASSERT_EQ(r.status, 0);
  auto j = Json::parse(r.out);
  ASSERT_EQ(j["coefficients"].size(), 30u);
  for (int i = 0; i < 30; ++i) EXPECT_EQ(j["coefficients"][i], (i == 5 || i == 25) ? "1" : "0") << i;
}

TEST(Cli, OperatorFilesRoundTrip) {
  const std::string expr = "--modulus 9973 --expr \"Y^2-1-X-3*X*Y\"";
  for (const std::string& cmd : {std::string("resolvent"), std::string("telescope --mode refined --minimal"),
                                 std::string("algtodiff --preset 2")}) {
    const auto path = temp_path("op.json");
    ASSERT_EQ(cli(cmd + " " + expr + " --output " + path).status, 0) << cmd;
    auto v = cli("verify " + expr + " --op " + path + " --json");
    EXPECT_EQ(v.status, 0) << cmd;
    EXPECT_TRUE(Json::parse(v.out)["verified"].get<bool>()) << cmd;
    // Library-level certificate agrees.
    std::ifstream f(path);
    auto op = op_from_json(PrimeField(9973), Json::parse(f));
    EXPECT_TRUE(verify_associated(op, test::parse_p(9973, "Y^2-1-X-3*X*Y")));
    auto a = cli("expand " + expr + " --root algebra --terms 40 --op " + path + " --json");
    auto b = cli("expand " + expr + " --root algebra --terms 40 --via newton --json");
    ASSERT_EQ(a.status, 0) << cmd;
    EXPECT_EQ(Json::parse(a.out)["coefficients"], Json::parse(b.out)["coefficients"]) << cmd;
  }
}

TEST(Cli, WrongOperatorIsRejected) {
  const auto path = temp_path("wrong.json");
  std::ofstream(path) << R"({"var":"Tx","field":{"kind":"rational"},"coeffs":[["-3"],["1"]]})";
  EXPECT_EQ(cli("verify --rational --expr \"Y-X^2\" --op " + path).status, 1);
  std::ofstream(path) << R"({"var":"Tx","field":{"kind":"rational"},"coeffs":[["-2"],["1"]]})";
  EXPECT_EQ(cli("verify --rational --expr \"Y-X^2\" --op " + path).status, 0);
}

TEST(Cli, ShiftRestoresCoordinates) {
  auto r = cli("resolvent --rational --expr \"Y^2-X\" --shift 1 --var dx");
  ASSERT_EQ(r.status, 0);
  auto op = op_from_json(kQ, Json::parse(r.out));
  EXPECT_TRUE(verify_associated(op, test::parse_q("Y^2-X")));
  auto e = cli("expand --rational --expr \"Y^2-X\" --shift 1 --root 1 --terms 4");
  EXPECT_EQ(e.out, "1\n1/2\n-1/8\n1/16\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("resolvent --modulus 10 --expr Y").status, 1);
  EXPECT_EQ(cli("resolvent --modulus 7 --rational --expr Y").status, 1);
  EXPECT_EQ(cli("resolvent --rational --expr \"Y^2*(\"").status, 1);
  EXPECT_EQ(cli("resolvent --rational --expr \"Y^2 - 2*X*Y + X^2\"").status, 1);
  EXPECT_EQ(cli("frobnicate").status, 1);
  EXPECT_EQ(cli("--help").status, 0);
  auto h = cli("algtodiff --rational --expr \"Y^2-X\" --json");
  EXPECT_EQ(h.status, 1);
  const std::string cmd = std::string(ALGDIFF_CLI_PATH) + " algtodiff --rational --expr \"Y^2-X\" 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::array<char, 512> buf{};
  std::string err(buf.data(), fread(buf.data(), 1, buf.size(), pipe.get()));
  EXPECT_NE(err.find("H_b"), std::string::npos);
  EXPECT_NE(err.find("try --shift 1"), std::string::npos);
}

TEST(Cli, StdinExpression) {
  const auto path = temp_path("expr.txt");
  std::ofstream(path) << "Y-X^2\n";
  auto r = cli("resolvent --rational --var theta --expr - < " + path);
  ASSERT_EQ(r.status, 0);
  auto op = op_from_json(kQ, Json::parse(r.out));
  EXPECT_EQ(op.to_string(), "((1))*Tx + ((-2))");
}

}  // namespace
}  // namespace algdiff
