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

// Randomized interaction logs.
//
// A LogRecord is one logged query: the candidate documents, the order in
// which they were shown (a uniformly random permutation), and the clicked
// positions. Click positions are 1-based ranks into `presented`.

#ifndef RANKEVAL_CORE_LOG_HPP_
#define RANKEVAL_CORE_LOG_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace rankeval {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a record has fewer than k results. Evaluation code catches
// this (or checks `n < k` up front) and counts the record as ineligible.
class RecordTooShort : public Error {
 public:
  RecordTooShort() : Error("record too short") {}
};

struct Doc {
  std::string doc_id;
  std::optional<double> relevance;  // simulation ground truth, in [0,1]
  std::map<std::string, double> scores;
  // Unknown JSONL fields.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

struct LogRecord {
  std::string query_id;
  std::vector<Doc> candidates;
  std::vector<std::string> presented;
  std::vector<int> clicks;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  std::size_t size() const { return candidates.size(); }
};

struct TruncatedRecord {
  std::string query_id;
  std::vector<std::string> top_docs;
  std::vector<int> clicks;

  std::size_t size() const { return top_docs.size(); }
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Collects every violated invariant; never throws.
inline ValidationResult Validate(const LogRecord& record,
                                 bool single_click = false) {
  ValidationResult result;
  auto add = [&result](std::string msg) {
    if (std::find(result.violations.begin(), result.violations.end(), msg) ==
        result.violations.end()) {
      result.violations.push_back(std::move(msg));
    }
  };

  std::unordered_set<std::string> candidate_ids;
  for (const Doc& doc : record.candidates) {
    if (doc.doc_id.empty()) add("empty doc_id");
    if (!candidate_ids.insert(doc.doc_id).second) {
      add("duplicate doc_id in candidates");
    }
    if (doc.relevance && !(*doc.relevance >= 0.0 && *doc.relevance <= 1.0)) {
      add("relevance out of range");
    }
  }

  std::unordered_set<std::string> seen;
  for (const std::string& id : record.presented) {
    if (!seen.insert(id).second) add("duplicate in presented");
    if (!candidate_ids.contains(id)) add("presented id not in candidates");
  }
  if (record.presented.size() != record.candidates.size()) {
    add("presented/candidate size mismatch");
  }

  const int n = static_cast<int>(record.presented.size());
  for (std::size_t i = 0; i < record.clicks.size(); ++i) {
    const int p = record.clicks[i];
    if (p < 1 || p > n) add("click position out of range");
    if (i > 0 && record.clicks[i - 1] >= p) {
      add("clicks not strictly increasing");
    }
  }
  if (single_click && record.clicks.size() > 1) {
    add("more than one click in single-click mode");
  }
  return result;
}

inline TruncatedRecord Truncate(const LogRecord& record, std::size_t k) {
  if (k == 0) throw Error("k must be positive");
  if (k > record.presented.size()) throw RecordTooShort();
  TruncatedRecord out;
  out.query_id = record.query_id;
  out.top_docs.assign(record.presented.begin(),
                      record.presented.begin() + static_cast<long>(k));
  for (int p : record.clicks) {
    if (p >= 1 && static_cast<std::size_t>(p) <= k) out.clicks.push_back(p);
  }
  return out;
}

// The candidate docs of `record` restricted to `ids`, in `ids` order.
inline std::vector<Doc> SelectDocs(const LogRecord& record,
                                   std::span<const std::string> ids) {
  std::unordered_map<std::string_view, const Doc*> by_id;
  by_id.reserve(record.candidates.size());
  for (const Doc& doc : record.candidates) by_id.emplace(doc.doc_id, &doc);
  std::vector<Doc> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("unknown doc_id: " + id);
    out.push_back(*it->second);
  }
  return out;
}

// Lifts a truncated record back into a LogRecord over its k docs.
inline LogRecord Lift(const TruncatedRecord& trec, const LogRecord& source) {
  LogRecord out;
  out.query_id = trec.query_id;
  out.candidates = SelectDocs(source, trec.top_docs);
  out.presented = trec.top_docs;
  out.clicks = trec.clicks;
  return out;
}

// Clicked doc ids, in position order.
inline std::vector<std::string> ClickedDocs(const TruncatedRecord& trec) {
  std::vector<std::string> out;
  for (int p : trec.clicks) {
    if (p < 1 || static_cast<std::size_t>(p) > trec.top_docs.size()) {
      throw Error("click outside truncation");
    }
    out.push_back(trec.top_docs[static_cast<std::size_t>(p - 1)]);
  }
  return out;
}

}  // namespace rankeval

#endif  // RANKEVAL_CORE_LOG_HPP_
