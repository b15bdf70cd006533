// Copyright 2026 The Problist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "problist/metrics.h"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "problist/error.h"
#include "problist/random.h"
#include "test_util.h"

namespace problist {
namespace {

using Tokens = std::vector<std::string>;

TEST(EvalTokenizeTest, Examples) {
  EXPECT_EQ(EvalTokenize("Sepsis; acute renal failure"),
            (Tokens{"sepsis", "acute", "renal", "failure"}));
  EXPECT_TRUE(EvalTokenize("").empty());
  EXPECT_EQ(EvalTokenize("CAD\u2014NSTEMI s/p cath"),
            (Tokens{"cad", "nstemi", "s", "p", "cath"}));
  EXPECT_TRUE(EvalTokenize(" ;;; -- ").empty());
}

TEST(RougeLTest, Examples) {
  const PrfScore same = RougeL(Tokens{"sepsis", "ards"}, Tokens{"sepsis", "ards"});
  EXPECT_DOUBLE_EQ(same.f1, 1.0);
  const PrfScore worked = RougeL(Tokens{"sepsis", "acute", "renal", "failure"},
                                 Tokens{"sepsis", "renal", "failure"});
  EXPECT_DOUBLE_EQ(worked.recall, 0.75);
  EXPECT_DOUBLE_EQ(worked.precision, 1.0);
  EXPECT_NEAR(worked.f1, 6.0 / 7.0, 1e-12);
  EXPECT_NEAR(worked.f1, 0.8571, 1e-4);
  const PrfScore reversed = RougeL(Tokens{"a", "b", "c"}, Tokens{"c", "b", "a"});
  EXPECT_NEAR(reversed.precision, 1.0 / 3, 1e-12);
  EXPECT_NEAR(reversed.recall, 1.0 / 3, 1e-12);
  EXPECT_NEAR(reversed.f1, 1.0 / 3, 1e-12);
}

TEST(RougeLTest, EmptySidesScoreZero) {
  const PrfScore a = RougeL(Tokens{}, Tokens{"x"});
  const PrfScore b = RougeL(Tokens{"x"}, Tokens{});
  const PrfScore c = RougeL(Tokens{}, Tokens{});
  for (const PrfScore& s : {a, b, c}) {
    EXPECT_EQ(s.precision, 0.0);
    EXPECT_EQ(s.recall, 0.0);
    EXPECT_EQ(s.f1, 0.0);
  }
}

TEST(RougeLTest, MatchesFullTableOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Tokens ref = testing::RandomTokens(rng, 30, 1 + rng.Uniform(8));
    const Tokens pred = testing::RandomTokens(rng, 30, 1 + rng.Uniform(8));
    ASSERT_EQ(LcsLength(ref, pred), testing::NaiveLcs(ref, pred));
    const PrfScore got = RougeL(ref, pred);
    const testing::NaivePrf want = testing::NaiveRouge(ref, pred);
    EXPECT_NEAR(got.precision, want.p, 1e-9);
    EXPECT_NEAR(got.recall, want.r, 1e-9);
    EXPECT_NEAR(got.f1, want.f, 1e-9);
  }
}

TEST(RougeLTest, IdentityAndOrderSensitivity) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens x = testing::RandomTokens(rng, 20, 50);
    if (x.empty()) continue;
    EXPECT_DOUBLE_EQ(RougeL(x, x).f1, 1.0);
  }
  const Tokens x = {"a", "b", "c", "d"};
  const Tokens y = {"d", "c", "b", "a"};
  EXPECT_LT(RougeL(x, y).f1, 1.0);
  const std::set<std::string> sx(x.begin(), x.end());
  const std::set<std::string> sy(y.begin(), y.end());
  EXPECT_DOUBLE_EQ(CuiF(sx, sy).f1, 1.0);
}

TEST(CuiFTest, Examples) {
  const PrfScore same = CuiF({"C0000001"}, {"C0000001"});
  EXPECT_DOUBLE_EQ(same.precision, 1.0);
  EXPECT_DOUBLE_EQ(same.recall, 1.0);
  EXPECT_DOUBLE_EQ(same.f1, 1.0);
  const PrfScore partial = CuiF({"C1", "C2", "C3"}, {"C2", "C3", "C4"});
  EXPECT_NEAR(partial.precision, 2.0 / 3, 1e-12);
  EXPECT_NEAR(partial.recall, 2.0 / 3, 1e-12);
  EXPECT_NEAR(partial.f1, 2.0 / 3, 1e-12);
  const PrfScore empty_pred = CuiF({"C1"}, {});
  EXPECT_EQ(empty_pred.precision, 0.0);
  EXPECT_EQ(empty_pred.recall, 0.0);
  EXPECT_EQ(empty_pred.f1, 0.0);
  EXPECT_DOUBLE_EQ(CuiF({}, {}).f1, 1.0);
}

std::set<std::string> RandomSet(Rng& rng) {
  std::set<std::string> out;
  for (std::size_t i = 0, n = rng.Uniform(8); i < n; ++i) {
    out.insert("C" + std::to_string(rng.Uniform(12)));
  }
  return out;
}

TEST(CuiFTest, PrecisionRecallDualityAndBounds) {
  Rng rng(88);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = RandomSet(rng);
    const auto b = RandomSet(rng);
    const PrfScore ab = CuiF(a, b);
    const PrfScore ba = CuiF(b, a);
    EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
    EXPECT_DOUBLE_EQ(ab.recall, ba.precision);
    EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
    for (double v : {ab.precision, ab.recall, ab.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(PrfScoreTest, HarmonicMean) {
  EXPECT_DOUBLE_EQ(PrfScore::FromPrecisionRecall(0.5, 1.0).f1, 2.0 / 3);
  EXPECT_EQ(PrfScore::FromPrecisionRecall(0.0, 0.0).f1, 0.0);
}

TEST(SentCosineTest, Examples) {
  EXPECT_DOUBLE_EQ(SentCosine(std::vector<double>{1, 0}, std::vector<double>{1, 0}),
                   1.0);
  EXPECT_DOUBLE_EQ(SentCosine(std::vector<double>{1, 0}, std::vector<double>{0, 1}),
                   0.0);
  const double want = 32.0 / (std::sqrt(14.0) * std::sqrt(77.0));
  EXPECT_NEAR(SentCosine(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6}),
              want, 1e-12);
  EXPECT_NEAR(want, 0.9746, 1e-4);
}

TEST(SentCosineTest, Errors) {
  try {
    SentCosine(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  try {
    SentCosine(std::vector<double>{0, 0}, std::vector<double>{1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

TEST(LoadVectorsTest, ParsesSpacesAndCommas) {
  std::istringstream in("a\t1 2 3\n\nb\t0.5,-1,2\n");
  const VectorTable table = LoadVectors(in);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table.at("a"), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(table.at("b"), (std::vector<double>{0.5, -1, 2}));
}

TEST(LoadVectorsTest, RejectsMissingTab) {
  std::istringstream in("a 1 2 3\n");
  EXPECT_THROW(LoadVectors(in), Error);
}

}  // namespace
}  // namespace problist
