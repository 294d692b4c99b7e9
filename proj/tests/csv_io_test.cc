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

#include "azana/csv_io.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "gtest/gtest.h"

#include "azana/error.h"
#include "reference.h"

namespace azana {
namespace {

namespace fs = std::filesystem;

class CsvIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("azana_csv_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& content) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << content;
    return path;
  }

  std::string ErrorOf(const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  }

  fs::path dir_;
};

TEST_F(CsvIoTest, LongFormatWithMissingValue) {
  const auto path = Write("r.csv",
                          "time,sensor,component,value\n"
                          "1,a,0,0.5\n"
                          "1,b,0,-1\n"
                          "2,a,0,\n"
                          "2,b,0,2e-3\n");
  const auto f = LoadResidualsLong(path);
  EXPECT_EQ(f.num_steps(), 2);
  EXPECT_EQ(f.sensors(), (std::vector<std::string>{"a", "b"}));
  EXPECT_FALSE(f.available(2, 0));
  EXPECT_EQ(f.at(2, 1)[0], 2e-3);
  EXPECT_EQ(f.num_available(), 3u);
}

TEST_F(CsvIoTest, LongFormatErrors) {
  const std::string header = "time,sensor,component,value\n";
  EXPECT_NE(ErrorOf([&] {
              LoadResidualsLong(Write("a.csv", header + "1,a,0,1\n1,a,0,2\n"));
            }).find(":3:"),
            std::string::npos);
  EXPECT_NE(ErrorOf([&] { LoadResidualsLong(Write("b.csv", header + "1,a,0,x\n")); })
                .find("non-numeric"),
            std::string::npos);
  EXPECT_THROW(LoadResidualsLong(Write("c.csv", "t,s,c,v\n1,a,0,1\n")), Error);
  EXPECT_THROW(LoadResidualsLong(Write("d.csv", header + "1,a,0,1\n1,a,1,\n")),
               Error);
  EXPECT_THROW(LoadResidualsLong(Write("e.csv", header)), Error);
  EXPECT_THROW(LoadResidualsLong((dir_ / "missing.csv").string()), Error);
}

TEST_F(CsvIoTest, DenseFormat) {
  const auto c0 = Write("c0.csv", "time,a,b\n1,1,2\n2,,4\n");
  const auto c1 = Write("c1.csv", "time,a,b\n1,5,6\n2,,8\n");
  const auto f = LoadResidualsDense({c0, c1});
  EXPECT_EQ(f.component_dim(), 2);
  EXPECT_FALSE(f.available(2, 0));
  EXPECT_EQ(f.at(2, 1)[1], 8.0);
  const auto bad_mask = Write("c2.csv", "time,a,b\n1,5,6\n2,3,8\n");
  EXPECT_THROW(LoadResidualsDense({c0, bad_mask}), Error);
  const auto bad_header = Write("c3.csv", "time,b,a\n1,5,6\n2,,8\n");
  EXPECT_THROW(LoadResidualsDense({c0, bad_header}), Error);
}

TEST_F(CsvIoTest, EdgesWithWildcardTime) {
  const auto path = Write("e.csv",
                          "time,src,dst,weight,directed\n"
                          "*,a,b,1,0\n"
                          "2,b,c,0.5,1\n");
  const auto snaps = LoadEdges(path, 3);
  ASSERT_EQ(snaps.size(), 3u);
  EXPECT_EQ(snaps[0].edges.size(), 1u);
  EXPECT_EQ(snaps[1].edges.size(), 2u);
  EXPECT_TRUE(snaps[1].edges[1].directed);
}

TEST_F(CsvIoTest, EdgeErrorsNameTheRow) {
  const std::string header = "time,src,dst,weight,directed\n";
  EXPECT_NE(ErrorOf([&] { LoadEdges(Write("a.csv", header + "1,a,b,1,0\n4,a,b,1,0\n"), 3); })
                .find(":3:"),
            std::string::npos);
  EXPECT_THROW(LoadEdges(Write("b.csv", header + "1,a,a,1,0\n"), 1), Error);
  EXPECT_THROW(LoadEdges(Write("c.csv", header + "1,a,b,0,0\n"), 1), Error);
  EXPECT_THROW(LoadEdges(Write("d.csv", header + "1,a,b,1,2\n"), 1), Error);
}

TEST_F(CsvIoTest, RoundTrip) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = reference::RandomInstance(rng);
    const std::string stem = (dir_ / ("r" + std::to_string(trial))).string();
    WriteResidualsLong(inst.residuals, stem + ".csv");
    const auto back = LoadResidualsLong(stem + ".csv");
    // The long loader takes T from the last row holding data.
    for (int t = 1; t <= back.num_steps(); ++t) {
      for (int s = 0; s < back.num_sensors(); ++s) {
        const int orig = *inst.residuals.FindSensor(back.sensors()[s]);
        ASSERT_EQ(back.available(t, s), inst.residuals.available(t, orig));
        if (!back.available(t, s)) continue;
        for (int c = 0; c < back.component_dim(); ++c) {
          ASSERT_EQ(back.at(t, s)[c], inst.residuals.at(t, orig)[c]);
        }
      }
    }
    const auto dense = WriteResidualsDense(inst.residuals, stem + "_dense.csv");
    EXPECT_EQ(LoadResidualsDense(dense), inst.residuals);

    WriteEdges(inst.snapshots, stem + "_edges.csv");
    const auto edges = LoadEdges(stem + "_edges.csv", inst.residuals.num_steps());
    for (std::size_t t = 0; t < edges.size(); ++t) {
      ASSERT_EQ(edges[t].edges.size(), inst.snapshots[t].edges.size());
    }
  }
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(-2.0), "-2");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(*ParseDouble(FormatDouble(x)), x);
  EXPECT_FALSE(ParseDouble("abc").has_value());
  EXPECT_FALSE(ParseDouble("1.5x").has_value());
}

TEST(SplitCsvLineTest, QuotedFields) {
  EXPECT_EQ(SplitCsvLine(R"(a,"b,c",d)"),
            (std::vector<std::string>{"a", "b,c", "d"}));
  EXPECT_EQ(SplitCsvLine("x,,y"), (std::vector<std::string>{"x", "", "y"}));
}

}  // namespace
}  // namespace azana
