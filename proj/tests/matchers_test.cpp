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

#include "rankeval/matchers.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "rankeval/simulate.hpp"
#include "test_util.hpp"

namespace rankeval {
namespace {

using ::rankeval::testing::MakeDoc;
using ::rankeval::testing::MakeRecord;
using ::rankeval::testing::WithinBinomial;

// Ranks d1 < d2 < ... by descending relevance.
Ranker IdentityRanker() { return NoisyOracleRanker(0.0, 0); }

LogRecord WithRelevance(LogRecord r) {
  for (Doc& d : r.candidates) {
    d.relevance = 1.0 - 0.1 * std::stod(d.doc_id.substr(1));
  }
  return r;
}

std::vector<LogRecord> UniformLogs(std::size_t count, std::size_t n,
                                   std::uint64_t seed) {
  SimConfig cfg;
  cfg.num_queries = count;
  cfg.n = n;
  cfg.seed = seed;
  ClickModel model;
  model.position_bias.assign(n, 0.5);
  return GenerateLogs(cfg, model);
}

TEST(DirectMatchTest, SmallCases) {
  const LogRecord same = WithRelevance(MakeRecord("q", {"d1", "d2"}, {}));
  const LogRecord swapped = WithRelevance(MakeRecord("q", {"d2", "d1"}, {}));
  const MatchOutcome m = DirectMatch(same, IdentityRanker(), 1);
  EXPECT_TRUE(m.eligible);
  EXPECT_TRUE(m.matched);
  EXPECT_EQ(m.method, Method::kDirect);
  EXPECT_FALSE(m.leader.has_value());
  EXPECT_FALSE(DirectMatch(swapped, IdentityRanker(), 1).matched);
}

TEST(DirectMatchTest, ShortRecordIsIneligible) {
  const LogRecord r = WithRelevance(MakeRecord("q", {"d1", "d2"}, {}));
  const MatchOutcome m = DirectMatch(r, IdentityRanker(), 3);
  EXPECT_FALSE(m.eligible);
  EXPECT_FALSE(m.matched);
}

// 120,000 uniform records, n=6, k=3: retention 1/(6*5*4) = 1/120.
TEST(DirectMatchTest, RetentionLaw) {
  const auto logs = UniformLogs(120000, 6, 21);
  const Ranker ranker = NoisyOracleRanker(0.3, 5);
  std::size_t hits = 0;
  for (const auto& r : logs) hits += DirectMatch(r, ranker, 3).matched;
  EXPECT_TRUE(WithinBinomial(hits, logs.size(), 1.0 / 120.0)) << hits;
}

TEST(TruncMatchTest, KOneAlwaysMatches) {
  for (const auto& r : UniformLogs(200, 5, 2)) {
    EXPECT_TRUE(TruncMatch(r, NoisyOracleRanker(0.5, 1), 1).matched);
  }
}

TEST(TruncMatchTest, RetentionLaw) {
  const auto logs = UniformLogs(60000, 5, 22);
  const Ranker ranker = NoisyOracleRanker(0.3, 5);
  std::size_t k2 = 0, k3 = 0;
  for (const auto& r : logs) {
    k2 += TruncMatch(r, ranker, 2).matched;
    k3 += TruncMatch(r, ranker, 3).matched;
  }
  EXPECT_TRUE(WithinBinomial(k2, logs.size(), 0.5)) << k2;
  EXPECT_TRUE(WithinBinomial(k3, logs.size(), 1.0 / 6.0)) << k3;
}

TEST(TruncMatchTest, Errors) {
  const LogRecord r = WithRelevance(MakeRecord("q", {"d1", "d2", "d3"}, {}));
  const TruncatedRecord t = Truncate(r, 2);
  const std::vector<Doc> wrong{MakeDoc("d1", 0.1), MakeDoc("d3", 0.2)};
  try {
    TruncMatch(t, IdentityRanker(), wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "candidate/truncation mismatch");
  }
  EXPECT_THROW(TruncMatch(t, Ranking{"d1", "d2", "d3"}), Error);
  EXPECT_FALSE(TruncMatch(r, IdentityRanker(), 4).eligible);
}

// Per record: direct at k implies direct at every k' < k, and direct at k
// implies trunc at k.
TEST(MatcherPropertiesTest, Implications) {
  const auto logs = UniformLogs(30000, 5, 23);
  const Ranker ranker = NoisyOracleRanker(0.2, 9);
  std::size_t direct_total = 0, trunc_total = 0;
  for (const auto& r : logs) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const bool direct = DirectMatch(r, ranker, k).matched;
      const bool trunc = TruncMatch(r, ranker, k).matched;
      direct_total += direct;
      trunc_total += trunc;
      if (direct) {
        EXPECT_TRUE(trunc);
        for (std::size_t j = 1; j < k; ++j) {
          EXPECT_TRUE(DirectMatch(r, ranker, j).matched);
        }
      }
    }
  }
  EXPECT_GE(trunc_total, direct_total);
}

// Retention does not depend on which ranker is evaluated.
TEST(MatcherPropertiesTest, RetentionIndependentOfRanker) {
  const auto logs = UniformLogs(60000, 5, 24);
  const Ranker a = NoisyOracleRanker(0.0, 1);
  const Ranker b = NoisyOracleRanker(2.0, 77);
  for (std::size_t k : {2u, 3u}) {
    std::size_t da = 0, db = 0, ta = 0, tb = 0;
    for (const auto& r : logs) {
      da += DirectMatch(r, a, k).matched;
      db += DirectMatch(r, b, k).matched;
      ta += TruncMatch(r, a, k).matched;
      tb += TruncMatch(r, b, k).matched;
    }
    double direct_p = 1.0;
    for (std::size_t i = 0; i < k; ++i) direct_p /= static_cast<double>(5 - i);
    const double trunc_p = k == 2 ? 0.5 : 1.0 / 6.0;
    EXPECT_TRUE(WithinBinomial(da, logs.size(), direct_p));
    EXPECT_TRUE(WithinBinomial(db, logs.size(), direct_p));
    EXPECT_TRUE(WithinBinomial(ta, logs.size(), trunc_p));
    EXPECT_TRUE(WithinBinomial(tb, logs.size(), trunc_p));
  }
}

TEST(MethodTest, Names) {
  for (Method m : {Method::kDirect, Method::kTrunc, Method::kRandInterleave}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_THROW(ParseMethod("ips"), Error);
}

}  // namespace
}  // namespace rankeval
