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

// Direct-match and Trunc-match.
//
// Direct-match keeps a logged query iff the ranker's top k over all n
// candidates equals the logged top k. On uniform logs this happens with
// probability (n-k)!/n!.
//
// Trunc-match first cuts the logged list to its top k, then asks the ranker
// to order only those k docs; a match happens with probability 1/k!.
//
// Records with fewer than k results are ineligible, which is tracked apart
// from "unmatched" so retention ratios use the eligible denominator.

#ifndef RANKEVAL_MATCHERS_HPP_
#define RANKEVAL_MATCHERS_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankeval/core_log.hpp"
#include "rankeval/rankers.hpp"

namespace rankeval {

enum class Method { kDirect, kTrunc, kRandInterleave };

enum class Side { kA, kB };

inline std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kDirect:
      return "direct";
    case Method::kTrunc:
      return "trunc";
    case Method::kRandInterleave:
      return "rand-interleave";
  }
  return "?";
}

inline Method ParseMethod(std::string_view name) {
  if (name == "direct") return Method::kDirect;
  if (name == "trunc") return Method::kTrunc;
  if (name == "rand-interleave" || name == "rand_interleave") {
    return Method::kRandInterleave;
  }
  throw Error("unknown method '" + std::string(name) + "'");
}

struct MatchOutcome {
  std::string query_id;
  Method method = Method::kDirect;
  std::size_t k = 0;
  bool eligible = false;
  bool matched = false;
  std::optional<Side> leader;  // rand-interleave matches only
};

// Direct-match against a precomputed ranking of all n candidates.
inline MatchOutcome DirectMatch(const LogRecord& record,
                                const Ranking& full_ranking, std::size_t k) {
  if (k == 0) throw Error("k must be positive");
  MatchOutcome out{record.query_id, Method::kDirect, k,
                   false,           false,           std::nullopt};
  if (k > record.presented.size()) return out;
  if (full_ranking.size() != record.presented.size()) {
    throw Error("ranking does not cover the candidate set");
  }
  out.eligible = true;
  out.matched = std::equal(full_ranking.begin(),
                           full_ranking.begin() + static_cast<long>(k),
                           record.presented.begin());
  return out;
}

inline MatchOutcome DirectMatch(const LogRecord& record, const Ranker& ranker,
                                std::size_t k) {
  if (k == 0) throw Error("k must be positive");
  if (k > record.presented.size()) {
    return MatchOutcome{record.query_id, Method::kDirect, k,
                        false,           false,           std::nullopt};
  }
  return DirectMatch(record, Rank(ranker, record.query_id, record.candidates),
                     k);
}

namespace internal {

inline bool SameIdSet(std::span<const std::string> a,
                      std::span<const std::string> b) {
  if (a.size() != b.size()) return false;
  std::vector<std::string_view> sa(a.begin(), a.end());
  std::vector<std::string_view> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

}  // namespace internal

// Trunc-match against a precomputed ranking of the k truncated docs.
inline MatchOutcome TruncMatch(const TruncatedRecord& trec,
                               const Ranking& ranking) {
  if (!internal::SameIdSet(ranking, trec.top_docs)) {
    throw Error("candidate/truncation mismatch");
  }
  MatchOutcome out{trec.query_id, Method::kTrunc, trec.top_docs.size(),
                   false,         false,          std::nullopt};
  out.eligible = true;
  out.matched = ranking == trec.top_docs;
  return out;
}

inline MatchOutcome TruncMatch(const TruncatedRecord& trec,
                               const Ranker& ranker,
                               std::span<const Doc> docs) {
  std::vector<std::string> ids;
  ids.reserve(docs.size());
  for (const Doc& doc : docs) ids.push_back(doc.doc_id);
  if (!internal::SameIdSet(ids, trec.top_docs)) {
    throw Error("candidate/truncation mismatch");
  }
  return TruncMatch(trec, Rank(ranker, trec.query_id, docs));
}

// Truncates at k and trunc-matches; ineligible when the record is short.
inline MatchOutcome TruncMatch(const LogRecord& record, const Ranker& ranker,
                               std::size_t k) {
  if (k == 0) throw Error("k must be positive");
  if (k > record.presented.size()) {
    return MatchOutcome{record.query_id, Method::kTrunc, k,
                        false,           false,          std::nullopt};
  }
  const TruncatedRecord trec = Truncate(record, k);
  const std::vector<Doc> docs = SelectDocs(record, trec.top_docs);
  return TruncMatch(trec, ranker, docs);
}

}  // namespace rankeval

#endif  // RANKEVAL_MATCHERS_HPP_
