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

// Offline balanced interleaving over truncated randomized logs.
//
// Two rankings of the same k docs are merged with balanced interleaving.
// A logged top-k list is retained when it equals the interleaving built with
// either ranker leading. Clicks on retained lists are credited with the
// lowest-click cutoff rule: with c the lowest clicked doc and
// kappa = min(rank_A(c), rank_B(c)), each ranker gets one credit per clicked
// doc inside its own top kappa.

#ifndef RANKEVAL_INTERLEAVING_HPP_
#define RANKEVAL_INTERLEAVING_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rankeval/core_log.hpp"
#include "rankeval/matchers.hpp"
#include "rankeval/random.hpp"
#include "rankeval/rankers.hpp"

namespace rankeval {

enum class Winner { kA, kB, kTie };

struct Attribution {
  std::string query_id;
  Winner winner = Winner::kTie;
  int h_a = 0;
  int h_b = 0;
};

// Balanced interleaving. ka and kb point at the next unread entry of A and
// B; the side whose pointer is behind (or the leader, on a tie) reads its
// next entry and appends it unless it is already in the output.
inline Ranking BalancedInterleave(const Ranking& a, const Ranking& b,
                                  Side leader) {
  if (!internal::SameIdSet(a, b)) throw Error("incomparable rankings");
  Ranking out;
  out.reserve(a.size());
  std::unordered_set<std::string_view> used;
  std::size_t ka = 0;
  std::size_t kb = 0;
  while (ka < a.size() && kb < b.size()) {
    if (ka < kb || (ka == kb && leader == Side::kA)) {
      if (used.insert(a[ka]).second) out.push_back(a[ka]);
      ++ka;
    } else {
      if (used.insert(b[kb]).second) out.push_back(b[kb]);
      ++kb;
    }
  }
  return out;
}

// Matches trec.top_docs against both leader choices. When both
// interleavings coincide and match, the recorded leader comes from a fair
// coin on the (coin_seed, query_id) stream.
inline MatchOutcome RandInterleaveMatch(const TruncatedRecord& trec,
                                        const Ranking& a, const Ranking& b,
                                        std::uint64_t coin_seed = 0) {
  if (!internal::SameIdSet(a, trec.top_docs)) {
    throw Error("candidate/truncation mismatch");
  }
  const Ranking led_by_a = BalancedInterleave(a, b, Side::kA);
  const Ranking led_by_b = BalancedInterleave(a, b, Side::kB);
  MatchOutcome out{trec.query_id, Method::kRandInterleave,
                   trec.size(),   false,
                   false,         std::nullopt};
  out.eligible = true;
  const bool match_a = trec.top_docs == led_by_a;
  const bool match_b = trec.top_docs == led_by_b;
  out.matched = match_a || match_b;
  if (match_a && match_b) {
    Engine eng =
        MakeStream(StreamTag::kLeaderCoin, {coin_seed, Fnv1a(trec.query_id)});
    out.leader = (eng() >> 63) == 0 ? Side::kA : Side::kB;
  } else if (match_a) {
    out.leader = Side::kA;
  } else if (match_b) {
    out.leader = Side::kB;
  }
  return out;
}

inline Attribution AttributeClicks(const TruncatedRecord& trec,
                                   const Ranking& a, const Ranking& b) {
  if (!internal::SameIdSet(a, b)) throw Error("incomparable rankings");
  Attribution out{trec.query_id};
  const std::vector<std::string> clicked = ClickedDocs(trec);
  if (clicked.empty()) return out;

  auto rank_in = [](const Ranking& r, const std::string& id) {
    auto it = std::find(r.begin(), r.end(), id);
    if (it == r.end()) throw Error("clicked doc missing from ranking");
    return static_cast<std::size_t>(it - r.begin()) + 1;
  };
  const int lowest_pos =
      *std::max_element(trec.clicks.begin(), trec.clicks.end());
  const std::string& lowest =
      trec.top_docs[static_cast<std::size_t>(lowest_pos - 1)];
  const std::size_t kappa = std::min(rank_in(a, lowest), rank_in(b, lowest));

  for (const std::string& doc : clicked) {
    if (rank_in(a, doc) <= kappa) ++out.h_a;
    if (rank_in(b, doc) <= kappa) ++out.h_b;
  }
  if (out.h_a > out.h_b) {
    out.winner = Winner::kA;
  } else if (out.h_b > out.h_a) {
    out.winner = Winner::kB;
  }
  return out;
}

}  // namespace rankeval

#endif  // RANKEVAL_INTERLEAVING_HPP_
