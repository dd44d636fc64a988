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

// Small helpers shared by the unit and acceptance tests.

#ifndef RANKEVAL_TESTS_TEST_UTIL_HPP_
#define RANKEVAL_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankeval/core_log.hpp"

namespace rankeval::testing {

// |observed/trials - p| within `sigmas` binomial standard deviations.
inline bool WithinBinomial(std::size_t hits, std::size_t trials, double p,
                           double sigmas = 3.0) {
  const double n = static_cast<double>(trials);
  const double sd = std::sqrt(p * (1.0 - p) / n);
  return std::abs(static_cast<double>(hits) / n - p) <= sigmas * sd;
}

inline Doc MakeDoc(std::string id, std::optional<double> relevance = {},
                   std::map<std::string, double> scores = {}) {
  Doc d;
  d.doc_id = std::move(id);
  d.relevance = relevance;
  d.scores = std::move(scores);
  return d;
}

inline LogRecord MakeRecord(std::string qid, std::vector<std::string> presented,
                            std::vector<int> clicks) {
  LogRecord r;
  r.query_id = std::move(qid);
  for (const auto& id : presented) r.candidates.push_back(MakeDoc(id));
  r.presented = std::move(presented);
  r.clicks = std::move(clicks);
  return r;
}

// All permutations of d1..dk, lexicographic.
inline std::vector<std::vector<std::string>> AllOrders(std::size_t k) {
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= k; ++i) ids.push_back("d" + std::to_string(i));
  std::sort(ids.begin(), ids.end());
  std::vector<std::vector<std::string>> out;
  do {
    out.push_back(ids);
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

}  // namespace rankeval::testing

#endif  // RANKEVAL_TESTS_TEST_UTIL_HPP_
