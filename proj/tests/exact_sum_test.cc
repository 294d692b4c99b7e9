// Copyright 2026 The Azana Authors.
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

#include "azana/exact_sum.h"

#include <algorithm>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace azana {
namespace {

TEST(ExactSumTest, Empty) { EXPECT_EQ(ExactSum().Value(), 0.0); }

TEST(ExactSumTest, CancellationIsExact) {
  ExactSum s;
  for (double x : {1e100, 1.0, -1e100, 1e-20}) s.Add(x);
  EXPECT_EQ(s.Value(), 1.0 + 1e-20);
}

TEST(ExactSumTest, TenthsRoundCorrectly) {
  ExactSum s;
  for (int i = 0; i < 10; ++i) s.Add(0.1);
  EXPECT_EQ(s.Value(), 1.0);
}

TEST(ExactSumTest, OrderIndependent) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1e6);
  std::vector<double> xs(500);
  for (double& x : xs) x = normal(rng);
  ExactSum forward;
  for (double x : xs) forward.Add(x);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(xs.begin(), xs.end(), rng);
    ExactSum shuffled;
    for (double x : xs) shuffled.Add(x);
    EXPECT_EQ(shuffled.Value(), forward.Value());
  }
}

TEST(ExactSumTest, MergeMatchesSingleAccumulator) {
  ExactSum a, b, all;
  for (int i = 1; i <= 100; ++i) {
    const double x = 1.0 / i;
    (i % 2 ? a : b).Add(x);
    all.Add(x);
  }
  a.Add(b);
  EXPECT_EQ(a.Value(), all.Value());
}

}  // namespace
}  // namespace azana
