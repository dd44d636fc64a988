/*
 * Copyright 2026 The rankeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rankeval/metrics.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace rankeval {
namespace {

using ::rankeval::testing::MakeRecord;

std::vector<MetricSample> Samples(const std::vector<double>& values,
                                  Method method = Method::kTrunc,
                                  std::size_t k = 3) {
  std::vector<MetricSample> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({method, k, "r", i, values[i], 10});
  }
  return out;
}

TEST(MrrTest, Examples) {
  const std::vector<LogRecord> one{MakeRecord("q", {"a", "b", "c"}, {1})};
  EXPECT_DOUBLE_EQ(MrrAtK(one, 3), 1.0);

  std::vector<TruncatedRecord> three(3);
  three[0].clicks = {1};
  three[1].clicks = {3};
  three[2].clicks = {};
  EXPECT_DOUBLE_EQ(MrrAtK(three, 3), 4.0 / 9.0);
}

TEST(MrrTest, ClickBelowCutoffCountsZero) {
  const std::vector<LogRecord> r{MakeRecord("q", {"a", "b", "c"}, {3})};
  EXPECT_DOUBLE_EQ(MrrAtK(r, 2), 0.0);
  EXPECT_DOUBLE_EQ(MrrAtK(r, 3), 1.0 / 3.0);
}

TEST(MrrTest, EmptyIsAnError) {
  try {
    MrrAtK(std::vector<LogRecord>{}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "no matched queries");
  }
}

TEST(MrrTest, MonotoneInKAndOrderInvariant) {
  Engine eng = MakeStream(StreamTag::kClicks, {4});
  std::vector<LogRecord> recs;
  for (int i = 0; i < 300; ++i) {
    std::vector<int> clicks;
    for (int p = 1; p <= 5; ++p) {
      if (UniformBelow(eng, 4) == 0) clicks.push_back(p);
    }
    recs.push_back(MakeRecord("q", {"a", "b", "c", "d", "e"}, clicks));
  }
  double prev = 0.0;
  for (std::size_t k = 1; k <= 5; ++k) {
    const double v = MrrAtK(recs, k);
    EXPECT_GE(v, prev);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
  const double before = MrrAtK(recs, 4);
  Shuffle(std::span<LogRecord>(recs), eng);
  EXPECT_NEAR(MrrAtK(recs, 4), before, 1e-12);
}

TEST(InterleaveClicksTest, Totals) {
  std::vector<Attribution> ties(7, Attribution{"q", Winner::kTie, 1, 1});
  const ClickTotals t = InterleaveClicks(ties);
  EXPECT_EQ(t.clicks_a, 7.0);
  EXPECT_EQ(t.clicks_b, 7.0);
  const std::vector<Attribution> one{{"q", Winner::kA, 1, 0}};
  EXPECT_EQ(InterleaveClicks(one).clicks_a, 1.0);
  EXPECT_EQ(InterleaveClicks(one).clicks_b, 0.0);
}

TEST(HalfSampleTest, SizesAndReproducibility) {
  const auto s = HalfSampleSlices(10, 3, 77);
  ASSERT_EQ(s.size(), 3u);
  for (const auto& slice : s) {
    EXPECT_EQ(slice.size(), 5u);
    EXPECT_EQ(std::set<std::size_t>(slice.begin(), slice.end()).size(), 5u);
    for (std::size_t i : slice) EXPECT_LT(i, 10u);
  }
  EXPECT_EQ(HalfSampleSlices(10, 3, 77), s);
  EXPECT_FALSE(s[0] == s[1] && s[1] == s[2]);
  EXPECT_EQ(HalfSampleSlices(11, 2, 1)[0].size(), 5u);
}

TEST(HalfSampleTest, MillionRecordSliceSize) {
  EXPECT_EQ(HalfSampleSlices(1034343, 2, 1)[0].size(), 517171u);
}

TEST(HalfSampleTest, RecordOverload) {
  const std::vector<int> items{10, 11, 12, 13};
  const auto slices = HalfSampleSlices(std::span<const int>(items), 2, 3);
  ASSERT_EQ(slices.size(), 2u);
  EXPECT_EQ(slices[0].size(), 2u);
}

TEST(HalfSampleTest, InclusionIsUniform) {
  const std::size_t n = 40, slices = 4000;
  std::vector<std::size_t> hits(n, 0);
  for (const auto& s : HalfSampleSlices(n, slices, 5)) {
    for (std::size_t i : s) ++hits[i];
  }
  for (std::size_t h : hits) {
    EXPECT_TRUE(testing::WithinBinomial(h, slices, 0.5, 4.0)) << h;
  }
}

TEST(HalfSampleTest, Errors) {
  try {
    HalfSampleSlices(1, 3, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "too few records");
  }
  EXPECT_THROW(HalfSampleSlices(10, 1, 0), Error);
}

TEST(SummarizeTest, Examples) {
  const std::vector<double> flat{100, 100, 100};
  EXPECT_EQ(Summarize(flat).mean, 100.0);
  EXPECT_EQ(Summarize(flat).std_error, 0.0);
  const std::vector<double> two{99, 101};
  EXPECT_DOUBLE_EQ(Summarize(two).mean, 100.0);
  EXPECT_DOUBLE_EQ(Summarize(two).std_error, std::sqrt(2.0));
}

TEST(SummarizeTest, TranslationInvariance) {
  const std::vector<double> v{0.3, 1.7, -2.0, 5.5, 0.1};
  for (double c : {-10.0, 0.5, 1000.0}) {
    std::vector<double> w;
    for (double x : v) w.push_back(x + c);
    EXPECT_NEAR(Summarize(w).mean, Summarize(v).mean + c, 1e-9);
    EXPECT_NEAR(Summarize(w).std_error, Summarize(v).std_error, 1e-9);
  }
}

TEST(SummarizeTest, NeedsTwoValues) {
  const std::vector<double> one{1.0};
  try {
    Summarize(one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "insufficient slices");
  }
}

TEST(RelativeReportTest, SelfComparisonIsExactly100) {
  const auto s = Samples({0.3, 0.31, 0.29, 0.305});
  const ComparisonReport r = RelativeReport(s, s);
  EXPECT_EQ(r.ranker1_norm, 100.0);
  EXPECT_EQ(r.ranker2_norm, 100.0);
  EXPECT_EQ(r.std_error, 0.0);
  for (double ratio : r.ratios) EXPECT_EQ(ratio, 100.0);
  EXPECT_FALSE(r.separation);
}

TEST(RelativeReportTest, ConstantRatio) {
  const std::vector<double> base{0.2, 0.4, 0.3};
  std::vector<double> better;
  for (double v : base) better.push_back(1.1 * v);
  const ComparisonReport r = RelativeReport(Samples(base), Samples(better));
  EXPECT_NEAR(r.ranker2_norm, 110.0, 1e-9);
  EXPECT_NEAR(r.std_error, 0.0, 1e-9);
  EXPECT_EQ(r.slices, 3u);
}

TEST(RelativeReportTest, ScaleInvariant) {
  const std::vector<double> v1{0.2, 0.25, 0.22, 0.21};
  const std::vector<double> v2{0.23, 0.27, 0.26, 0.22};
  const ComparisonReport r = RelativeReport(Samples(v1), Samples(v2));
  for (double c : {0.01, 3.0, 250.0}) {
    std::vector<double> w1, w2;
    for (double x : v1) w1.push_back(c * x);
    for (double x : v2) w2.push_back(c * x);
    const ComparisonReport s = RelativeReport(Samples(w1), Samples(w2));
    EXPECT_NEAR(s.ranker2_norm, r.ranker2_norm, 1e-9);
    EXPECT_NEAR(s.std_error, r.std_error, 1e-9);
    EXPECT_NEAR(s.ranker1_std_error, r.ranker1_std_error, 1e-9);
    EXPECT_EQ(s.separation, r.separation);
  }
}

TEST(RelativeReportTest, Separation) {
  // Ranker 1 nearly flat, ranker 2 clearly ahead.
  const auto s1 = Samples({1.0, 1.01, 0.99, 1.0});
  EXPECT_TRUE(RelativeReport(s1, Samples({1.2, 1.22, 1.18, 1.2})).separation);
  EXPECT_TRUE(RelativeReport(s1, Samples({0.8, 0.81, 0.79, 0.8})).separation);
  EXPECT_FALSE(RelativeReport(s1, Samples({1.0, 1.02, 0.99, 1.01})).separation);
}

TEST(RelativeReportTest, Errors) {
  try {
    RelativeReport(Samples({0.0, 1.0}), Samples({1.0, 1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "degenerate baseline");
  }
  EXPECT_THROW(RelativeReport(Samples({1.0, 1.0}), Samples({1.0})), Error);
  EXPECT_THROW(RelativeReport(Samples({1.0, 1.0}, Method::kTrunc, 2),
                              Samples({1.0, 1.0}, Method::kTrunc, 3)),
               Error);
}

// Slice dispersion of a mean falls as the log grows: N vs 4N, averaged over
// a few independent datasets.
TEST(HalfSampleTest, DispersionShrinksWithN) {
  auto dispersion = [](std::size_t n, std::uint64_t seed) {
    Engine eng = MakeStream(StreamTag::kClicks, {seed, n});
    std::vector<double> x(n);
    for (double& v : x) v = Uniform01(eng) < 0.3 ? 1.0 : 0.0;
    std::vector<double> means;
    for (const auto& s : HalfSampleSlices(n, 20, seed)) {
      double sum = 0;
      for (std::size_t i : s) sum += x[i];
      means.push_back(sum / static_cast<double>(s.size()));
    }
    return Summarize(means).std_error;
  };
  double small = 0, large = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    small += dispersion(2000, seed);
    large += dispersion(8000, seed);
  }
  EXPECT_LT(large, small);
}

}  // namespace
}  // namespace rankeval
