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

// Per-record scoring and per-slice reduction shared by the CLI and the
// acceptance suite.
//
// Matching is decided once per record, then every half-sample slice is a
// reduction over a subset of those per-record results. Full rankings are
// computed once per (record, ranker); the ranking of a truncated top-k set
// is the order induced by the full ranking, which is what Rank() returns
// on the subset since its order is total.

#ifndef RANKEVAL_EVALUATION_HPP_
#define RANKEVAL_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "rankeval/core_log.hpp"
#include "rankeval/interleaving.hpp"
#include "rankeval/matchers.hpp"
#include "rankeval/metrics.hpp"
#include "rankeval/rankers.hpp"

namespace rankeval {

inline std::vector<Ranking> RankAll(std::span<const LogRecord> records,
                                    const Ranker& ranker) {
  std::vector<Ranking> out;
  out.reserve(records.size());
  for (const LogRecord& r : records) {
    out.push_back(Rank(ranker, r.query_id, r.candidates));
  }
  return out;
}

// `full` restricted to the ids in `subset`, keeping `full`'s order.
inline Ranking Restrict(const Ranking& full,
                        std::span<const std::string> subset) {
  std::unordered_set<std::string_view> keep(subset.begin(), subset.end());
  Ranking out;
  out.reserve(subset.size());
  for (const std::string& id : full) {
    if (keep.contains(id)) out.push_back(id);
  }
  return out;
}

struct RecordScore {
  bool eligible = false;
  bool matched = false;
  double reciprocal_rank = 0.0;
};

// Direct-match or Trunc-match every record at cutoff k and score matched
// records by reciprocal rank.
inline std::vector<RecordScore> ScoreRecords(std::span<const LogRecord> records,
                                             std::span<const Ranking> rankings,
                                             Method method, std::size_t k) {
  if (method == Method::kRandInterleave) {
    throw Error("rand-interleave is scored with ScoreInterleaved");
  }
  std::vector<RecordScore> out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LogRecord& rec = records[i];
    if (k > rec.presented.size()) continue;
    MatchOutcome m;
    if (method == Method::kDirect) {
      m = DirectMatch(rec, rankings[i], k);
    } else {
      const TruncatedRecord trec = Truncate(rec, k);
      m = TruncMatch(trec, Restrict(rankings[i], trec.top_docs));
    }
    out[i].eligible = m.eligible;
    out[i].matched = m.matched;
    if (m.matched) out[i].reciprocal_rank = ReciprocalRank(rec.clicks, k);
  }
  return out;
}

struct InterleaveScore {
  bool eligible = false;
  bool matched = false;
  Attribution attribution;
};

inline std::vector<InterleaveScore> ScoreInterleaved(
    std::span<const LogRecord> records, std::span<const Ranking> rankings_a,
    std::span<const Ranking> rankings_b, std::size_t k,
    std::uint64_t coin_seed) {
  std::vector<InterleaveScore> out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LogRecord& rec = records[i];
    if (k > rec.presented.size()) continue;
    const TruncatedRecord trec = Truncate(rec, k);
    const Ranking a = Restrict(rankings_a[i], trec.top_docs);
    const Ranking b = Restrict(rankings_b[i], trec.top_docs);
    const MatchOutcome m = RandInterleaveMatch(trec, a, b, coin_seed);
    out[i].eligible = true;
    out[i].matched = m.matched;
    if (m.matched) out[i].attribution = AttributeClicks(trec, a, b);
  }
  return out;
}

struct MrrStat {
  std::size_t eligible = 0;
  std::size_t matched = 0;
  std::optional<double> mrr;  // empty when nothing matched
};

inline MrrStat ReduceMrr(std::span<const RecordScore> scores,
                         std::span<const std::size_t> indices) {
  MrrStat s;
  double sum = 0.0;
  for (std::size_t i : indices) {
    if (!scores[i].eligible) continue;
    ++s.eligible;
    if (!scores[i].matched) continue;
    ++s.matched;
    sum += scores[i].reciprocal_rank;
  }
  if (s.matched > 0) s.mrr = sum / static_cast<double>(s.matched);
  return s;
}

struct InterleaveStat {
  std::size_t eligible = 0;
  std::size_t matched = 0;
  double clicks_a = 0.0;
  double clicks_b = 0.0;
  std::size_t wins_a = 0;
  std::size_t wins_b = 0;
  std::size_t ties = 0;
};

inline InterleaveStat ReduceInterleave(std::span<const InterleaveScore> scores,
                                       std::span<const std::size_t> indices) {
  InterleaveStat s;
  for (std::size_t i : indices) {
    if (!scores[i].eligible) continue;
    ++s.eligible;
    if (!scores[i].matched) continue;
    ++s.matched;
    const Attribution& a = scores[i].attribution;
    s.clicks_a += a.h_a;
    s.clicks_b += a.h_b;
    switch (a.winner) {
      case Winner::kA:
        ++s.wins_a;
        break;
      case Winner::kB:
        ++s.wins_b;
        break;
      case Winner::kTie:
        ++s.ties;
        break;
    }
  }
  return s;
}

inline std::vector<std::size_t> AllIndices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

// Two rankers evaluated on one log with a fixed set of half-sample slices.
// Ranker 1 is the baseline (pinned at 100); for rand-interleave, ranker 1
// plays side A and ranker 2 side B.
class TwoRankerStudy {
 public:
  TwoRankerStudy(std::span<const LogRecord> records, const Ranker& ranker1,
                 const Ranker& ranker2, std::size_t num_slices,
                 std::uint64_t seed)
      : records_(records),
        name1_(ranker1.name()),
        name2_(ranker2.name()),
        seed_(seed),
        rankings1_(RankAll(records, ranker1)),
        rankings2_(RankAll(records, ranker2)),
        slices_(HalfSampleSlices(records.size(), num_slices, seed)) {}

  const std::vector<std::vector<std::size_t>>& slices() const {
    return slices_;
  }

  // Per-slice metric values for ranker 1 and 2; nullopt when some slice
  // matched nothing.
  std::optional<std::pair<std::vector<MetricSample>, std::vector<MetricSample>>>
  Samples(Method method, std::size_t k) const {
    std::vector<MetricSample> s1, s2;
    if (method == Method::kRandInterleave) {
      const auto scores =
          ScoreInterleaved(records_, rankings1_, rankings2_, k, seed_);
      for (std::size_t i = 0; i < slices_.size(); ++i) {
        const InterleaveStat st = ReduceInterleave(scores, slices_[i]);
        if (st.matched == 0) return std::nullopt;
        s1.push_back({method, k, name1_, i, st.clicks_a, st.matched});
        s2.push_back({method, k, name2_, i, st.clicks_b, st.matched});
      }
    } else {
      const auto scores1 = ScoreRecords(records_, rankings1_, method, k);
      const auto scores2 = ScoreRecords(records_, rankings2_, method, k);
      for (std::size_t i = 0; i < slices_.size(); ++i) {
        const MrrStat a = ReduceMrr(scores1, slices_[i]);
        const MrrStat b = ReduceMrr(scores2, slices_[i]);
        if (!a.mrr || !b.mrr) return std::nullopt;
        s1.push_back({method, k, name1_, i, *a.mrr, a.matched});
        s2.push_back({method, k, name2_, i, *b.mrr, b.matched});
      }
    }
    return std::make_pair(std::move(s1), std::move(s2));
  }

  // nullopt when the comparison is undefined (nothing matched in a slice,
  // or a zero baseline).
  std::optional<ComparisonReport> Compare(Method method, std::size_t k) const {
    auto samples = Samples(method, k);
    if (!samples) return std::nullopt;
    try {
      return RelativeReport(samples->first, samples->second);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

 private:
  std::span<const LogRecord> records_;
  std::string name1_;
  std::string name2_;
  std::uint64_t seed_;
  std::vector<Ranking> rankings1_;
  std::vector<Ranking> rankings2_;
  std::vector<std::vector<std::size_t>> slices_;
};

}  // namespace rankeval

#endif  // RANKEVAL_EVALUATION_HPP_
