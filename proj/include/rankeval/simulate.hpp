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

// Synthetic randomized logs and exact oracles.
//
// Each query gets n docs with relevances drawn i.i.d. from a discrete grid,
// is shown in a uniformly random order, and receives clicks from a
// position-bias model: position p is examined with probability bias[p] and
// an examined doc is clicked with probability click_prob(relevance). In
// single-click mode the scan stops at the first click.
//
// Per-query draws use streams keyed on (seed, query_index), so any query can
// be regenerated on its own and the output never depends on scheduling.

#ifndef RANKEVAL_SIMULATE_HPP_
#define RANKEVAL_SIMULATE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankeval/core_log.hpp"
#include "rankeval/interleaving.hpp"
#include "rankeval/matchers.hpp"
#include "rankeval/random.hpp"
#include "rankeval/rankers.hpp"

namespace rankeval {

struct ClickModel {
  std::vector<double> position_bias{1.0, 0.6, 0.4, 0.3, 0.25};
  std::function<double(double)> click_prob = [](double r) { return r; };
  bool single_click = true;

  double Examine(std::size_t pos) const {  // 1-based
    return pos <= position_bias.size() ? position_bias[pos - 1] : 0.0;
  }
};

inline void CheckClickModel(const ClickModel& model, std::size_t n) {
  if (model.position_bias.size() < n) {
    throw Error("position_bias shorter than the number of results");
  }
  for (std::size_t i = 0; i < model.position_bias.size(); ++i) {
    const double b = model.position_bias[i];
    if (!(b >= 0.0 && b <= 1.0)) throw Error("position_bias outside [0,1]");
    if (i > 0 && b > model.position_bias[i - 1]) {
      throw Error("position_bias must be nonincreasing");
    }
  }
  if (!model.click_prob) throw Error("click_prob is not set");
}

struct SimConfig {
  std::size_t num_queries = 1000;
  std::size_t n = 5;
  std::vector<double> relevance_grid{0.1, 0.3, 0.5, 0.7, 0.9};
  std::uint64_t seed = 0;
};

inline void CheckSimConfig(const SimConfig& cfg) {
  if (cfg.num_queries < 1) throw Error("num_queries must be at least 1");
  if (cfg.n < 1) throw Error("n must be at least 1");
  if (cfg.relevance_grid.empty()) throw Error("empty relevance grid");
  for (double r : cfg.relevance_grid) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error("relevance outside [0,1]");
  }
}

inline std::string QueryId(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "q%07zu", index);
  return buf;
}

// Candidate docs d1..dn of query `index`, in generation order.
inline std::vector<Doc> GenerateCandidates(const SimConfig& cfg,
                                           std::size_t index) {
  Engine eng = MakeStream(StreamTag::kCandidates, {cfg.seed, index});
  std::vector<Doc> docs(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    docs[i].doc_id = "d" + std::to_string(i + 1);
    docs[i].relevance =
        cfg.relevance_grid[UniformBelow(eng, cfg.relevance_grid.size())];
  }
  return docs;
}

// Click positions for docs shown in the given order.
inline std::vector<int> SimulateClicks(std::span<const double> relevances,
                                       const ClickModel& model, Engine& eng) {
  std::vector<int> clicks;
  for (std::size_t p = 1; p <= relevances.size(); ++p) {
    const double prob = model.Examine(p) * model.click_prob(relevances[p - 1]);
    if (Uniform01(eng) < prob) {
      clicks.push_back(static_cast<int>(p));
      if (model.single_click) break;
    }
  }
  return clicks;
}

inline LogRecord GenerateRecord(const SimConfig& cfg, const ClickModel& model,
                                std::size_t index) {
  LogRecord record;
  record.query_id = QueryId(index);
  record.candidates = GenerateCandidates(cfg, index);

  std::vector<std::size_t> order(cfg.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Engine shuffle = MakeStream(StreamTag::kPresentation, {cfg.seed, index});
  Shuffle(std::span<std::size_t>(order), shuffle);

  std::vector<double> shown_relevance;
  shown_relevance.reserve(cfg.n);
  for (std::size_t i : order) {
    record.presented.push_back(record.candidates[i].doc_id);
    shown_relevance.push_back(*record.candidates[i].relevance);
  }
  Engine clicks = MakeStream(StreamTag::kClicks, {cfg.seed, index});
  record.clicks = SimulateClicks(shown_relevance, model, clicks);
  return record;
}

inline std::vector<LogRecord> GenerateLogs(const SimConfig& cfg,
                                           const ClickModel& model) {
  CheckSimConfig(cfg);
  CheckClickModel(model, cfg.n);
  std::vector<LogRecord> out;
  out.reserve(cfg.num_queries);
  for (std::size_t q = 0; q < cfg.num_queries; ++q) {
    out.push_back(GenerateRecord(cfg, model, q));
  }
  return out;
}

// Expected reciprocal rank (cut at k) of docs shown in this order:
// sum over p <= k of (1/p) * P(first click at p).
inline double ExpectedReciprocalRank(std::span<const double> relevances,
                                     const ClickModel& model, std::size_t k) {
  double no_click_yet = 1.0;
  double expected = 0.0;
  const std::size_t depth = std::min(k, relevances.size());
  for (std::size_t p = 1; p <= depth; ++p) {
    const double c = model.Examine(p) * model.click_prob(relevances[p - 1]);
    expected += no_click_yet * c / static_cast<double>(p);
    no_click_yet *= 1.0 - c;
  }
  return expected;
}

inline constexpr std::size_t kMaxOracleDocs = 7;

// Exact expected MRR@k of `ranker` if its own ordering were presented,
// averaged over the given queries.
inline double ExpectedMetricOracle(const Ranker& ranker,
                                   std::span<const LogRecord> queries,
                                   const ClickModel& model, std::size_t k) {
  if (queries.empty()) throw Error("no queries");
  double sum = 0.0;
  std::vector<double> rel;
  for (const LogRecord& q : queries) {
    if (q.candidates.size() > kMaxOracleDocs) {
      throw Error("enumeration infeasible");
    }
    const Ranking order = Rank(ranker, q.query_id, q.candidates);
    rel.clear();
    for (const std::string& id : order) {
      auto it = std::find_if(q.candidates.begin(), q.candidates.end(),
                             [&](const Doc& d) { return d.doc_id == id; });
      if (!it->relevance) throw Error("no ground truth");
      rel.push_back(*it->relevance);
    }
    sum += ExpectedReciprocalRank(rel, model, k);
  }
  return sum / static_cast<double>(queries.size());
}

// Same, over the candidate sets that GenerateLogs(cfg, ...) would draw.
inline double ExpectedMetricOracle(const Ranker& ranker, const SimConfig& cfg,
                                   const ClickModel& model, std::size_t k) {
  CheckSimConfig(cfg);
  if (cfg.n > kMaxOracleDocs) throw Error("enumeration infeasible");
  CheckClickModel(model, cfg.n);
  double sum = 0.0;
  std::vector<LogRecord> one(1);
  for (std::size_t q = 0; q < cfg.num_queries; ++q) {
    one[0].query_id = QueryId(q);
    one[0].candidates = GenerateCandidates(cfg, q);
    sum += ExpectedMetricOracle(ranker, one, model, k);
  }
  return sum / static_cast<double>(cfg.num_queries);
}

// Exact fraction, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw Error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double ToDouble() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string ToString() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline constexpr std::size_t kMaxRetentionDocs = 8;

// Exact probability that a uniformly random presented order is matched,
// found by enumerating every order. For kDirect, `a` ranks all n docs; for
// kTrunc and kRandInterleave, `a` (and `b`) rank the k truncated docs and
// `n` is ignored.
inline Rational RetentionOracle(Method method, std::size_t n, std::size_t k,
                                const Ranking& a,
                                const std::optional<Ranking>& b = {}) {
  if (k == 0) throw Error("k must be positive");
  if (method == Method::kRandInterleave && !b) {
    throw Error("rand-interleave needs two rankings");
  }
  if (method != Method::kRandInterleave && b) {
    throw Error("second ranking only applies to rand-interleave");
  }
  const std::size_t universe = method == Method::kDirect ? n : k;
  if (method == Method::kDirect && k > n) throw RecordTooShort();
  if (universe > kMaxRetentionDocs) throw Error("enumeration infeasible");
  if (a.size() != universe) throw Error("ranking has the wrong length");

  std::vector<Ranking> targets;
  if (method == Method::kRandInterleave) {
    if (b->size() != universe) throw Error("ranking has the wrong length");
    targets.push_back(BalancedInterleave(a, *b, Side::kA));
    targets.push_back(BalancedInterleave(a, *b, Side::kB));
  } else {
    targets.push_back(a);
  }

  Ranking order = a;
  std::sort(order.begin(), order.end());
  if (std::adjacent_find(order.begin(), order.end()) != order.end()) {
    throw Error("ranking has duplicate ids");
  }
  std::int64_t total = 0;
  std::int64_t hits = 0;
  do {
    ++total;
    for (const Ranking& t : targets) {
      if (std::equal(t.begin(), t.begin() + static_cast<long>(k),
                     order.begin())) {
        ++hits;
        break;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return Rational(hits, total);
}

}  // namespace rankeval

#endif  // RANKEVAL_SIMULATE_HPP_
