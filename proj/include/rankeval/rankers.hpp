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

#ifndef RANKEVAL_RANKERS_HPP_
#define RANKEVAL_RANKERS_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankeval/core_log.hpp"
#include "rankeval/random.hpp"

namespace rankeval {

// Ordered list of distinct doc ids, best first.
using Ranking = std::vector<std::string>;

// A named, deterministic scoring rule over (query_id, doc).
class Ranker {
 public:
  using ScoreFn = std::function<double(std::string_view, const Doc&)>;

  Ranker(std::string name, ScoreFn score)
      : name_(std::move(name)), score_(std::move(score)) {}

  const std::string& name() const { return name_; }
  double Score(std::string_view query_id, const Doc& doc) const {
    return score_(query_id, doc);
  }

 private:
  std::string name_;
  ScoreFn score_;
};

// Sorts by score descending, ties by ascending doc_id.
inline Ranking Rank(const Ranker& ranker, std::string_view query_id,
                    std::span<const Doc> docs) {
  if (docs.empty()) throw Error("cannot rank an empty doc set");
  std::vector<std::pair<double, const std::string*>> scored;
  scored.reserve(docs.size());
  for (const Doc& doc : docs) {
    scored.emplace_back(ranker.Score(query_id, doc), &doc.doc_id);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  });
  Ranking out;
  out.reserve(scored.size());
  for (const auto& [score, id] : scored) out.push_back(*id);
  return out;
}

// Replays a precomputed score from Doc::scores.
inline Ranker ScoreFieldRanker(std::string field) {
  std::string name = "score:" + field;
  return Ranker(std::move(name),
                [field = std::move(field)](std::string_view, const Doc& doc) {
                  auto it = doc.scores.find(field);
                  if (it == doc.scores.end()) throw Error("unscored document");
                  return it->second;
                });
}

// Per-(query, doc) gaussian noise for the noisy oracle ranker.
inline double OracleNoise(std::uint64_t seed, std::string_view query_id,
                          std::string_view doc_id) {
  Engine eng = MakeStream(StreamTag::kRankerNoise,
                          {seed, Fnv1a(query_id), Fnv1a(doc_id)});
  return StandardNormal(eng);
}

// Scores relevance plus N(0, sigma^2) noise. Smaller sigma ranks better.
inline Ranker NoisyOracleRanker(double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw Error("noise_sigma must be nonnegative");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "oracle:%g:%llu", noise_sigma,
                static_cast<unsigned long long>(seed));
  return Ranker(buf,
                [noise_sigma, seed](std::string_view query_id, const Doc& doc) {
                  if (!doc.relevance) throw Error("no ground truth");
                  if (noise_sigma == 0.0) return *doc.relevance;
                  return *doc.relevance +
                         noise_sigma * OracleNoise(seed, query_id, doc.doc_id);
                });
}

// Parses `score:<field>` or `oracle:<sigma>:<seed>`.
inline Ranker ParseRanker(std::string_view designator) {
  const std::string text(designator);
  if (text.starts_with("score:")) {
    std::string field = text.substr(6);
    if (field.empty()) throw Error("empty score field in '" + text + "'");
    return ScoreFieldRanker(std::move(field));
  }
  if (text.starts_with("oracle:")) {
    const std::string rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw Error("expected oracle:<sigma>:<seed>, got '" + text + "'");
    }
    try {
      std::size_t used = 0;
      const double sigma = std::stod(rest.substr(0, colon), &used);
      if (used != colon) throw Error("bad sigma");
      const std::string seed_text = rest.substr(colon + 1);
      const unsigned long long seed = std::stoull(seed_text, &used);
      if (used != seed_text.size()) throw Error("bad seed");
      return NoisyOracleRanker(sigma, seed);
    } catch (const std::logic_error&) {
      throw Error("expected oracle:<sigma>:<seed>, got '" + text + "'");
    } catch (const Error&) {
      throw Error("expected oracle:<sigma>:<seed>, got '" + text + "'");
    }
  }
  throw Error("unknown ranker designator '" + text + "'");
}

}  // namespace rankeval

#endif  // RANKEVAL_RANKERS_HPP_
