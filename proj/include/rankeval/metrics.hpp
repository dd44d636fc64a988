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

// MRR@k, interleaving click totals, half-sample slicing and the normalized
// two-ranker report (ranker 1 pinned at 100).

#ifndef RANKEVAL_METRICS_HPP_
#define RANKEVAL_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rankeval/core_log.hpp"
#include "rankeval/interleaving.hpp"
#include "rankeval/matchers.hpp"
#include "rankeval/random.hpp"

namespace rankeval {

// 1/p for the first click at p <= k, 0 when there is none.
inline double ReciprocalRank(std::span<const int> clicks, std::size_t k) {
  int first = 0;
  for (int p : clicks) {
    if (p >= 1 && static_cast<std::size_t>(p) <= k &&
        (first == 0 || p < first)) {
      first = p;
    }
  }
  return first == 0 ? 0.0 : 1.0 / first;
}

template <typename Record>
concept HasClicks = requires(const Record& r) {
  { std::span<const int>(r.clicks) };
};

// Mean reciprocal rank over already-matched records.
template <HasClicks Record>
double MrrAtK(std::span<const Record> matched, std::size_t k) {
  if (matched.empty()) throw Error("no matched queries");
  double sum = 0.0;
  for (const Record& r : matched) sum += ReciprocalRank(r.clicks, k);
  return sum / static_cast<double>(matched.size());
}

template <HasClicks Record>
double MrrAtK(const std::vector<Record>& matched, std::size_t k) {
  return MrrAtK(std::span<const Record>(matched), k);
}

struct ClickTotals {
  double clicks_a = 0.0;
  double clicks_b = 0.0;
};

inline ClickTotals InterleaveClicks(std::span<const Attribution> attrs) {
  ClickTotals t;
  for (const Attribution& a : attrs) {
    t.clicks_a += a.h_a;
    t.clicks_b += a.h_b;
  }
  return t;
}

// `num_slices` independent floor(n/2)-subsets of {0..n-1}, sampled without
// replacement; slice i draws from the (seed, i) stream. Indices are sorted.
inline std::vector<std::vector<std::size_t>> HalfSampleSlices(
    std::size_t n, std::size_t num_slices, std::uint64_t seed) {
  if (num_slices < 2) throw Error("num_slices must be at least 2");
  if (n < 2) throw Error("too few records");
  const std::size_t half = n / 2;
  std::vector<std::vector<std::size_t>> slices;
  slices.reserve(num_slices);
  std::vector<std::size_t> pool(n);
  for (std::size_t s = 0; s < num_slices; ++s) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Engine eng = MakeStream(StreamTag::kSlice, {seed, s});
    // Partial Fisher-Yates: the first `half` entries become the sample.
    for (std::size_t i = 0; i < half; ++i) {
      const std::size_t j = i + UniformBelow(eng, n - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> slice(pool.begin(),
                                   pool.begin() + static_cast<long>(half));
    std::sort(slice.begin(), slice.end());
    slices.push_back(std::move(slice));
  }
  return slices;
}

template <typename T>
std::vector<std::vector<T>> HalfSampleSlices(std::span<const T> records,
                                             std::size_t num_slices,
                                             std::uint64_t seed) {
  std::vector<std::vector<T>> out;
  for (const auto& idx : HalfSampleSlices(records.size(), num_slices, seed)) {
    std::vector<T> slice;
    slice.reserve(idx.size());
    for (std::size_t i : idx) slice.push_back(records[i]);
    out.push_back(std::move(slice));
  }
  return out;
}

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation across slices
};

inline Summary Summarize(std::span<const double> values) {
  if (values.size() < 2) throw Error("insufficient slices");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

struct MetricSample {
  Method method = Method::kDirect;
  std::size_t k = 0;
  std::string ranker;
  std::size_t slice_index = 0;
  double value = 0.0;
  std::size_t matched_count = 0;
};

struct ComparisonReport {
  Method method = Method::kDirect;
  std::size_t k = 0;
  std::string ranker1;
  std::string ranker2;
  double ranker1_norm = 100.0;
  double ranker2_norm = 0.0;
  double std_error = 0.0;          // of the per-slice ratios
  double ranker1_std_error = 0.0;  // dispersion of ranker 1, on the 100 scale
  std::size_t slices = 0;
  bool separation = false;
  std::vector<double> ratios;  // 100 * value2 / value1, per slice
};

inline ComparisonReport RelativeReport(std::span<const MetricSample> samples1,
                                       std::span<const MetricSample> samples2) {
  if (samples1.size() != samples2.size()) {
    throw Error("sample lists differ in length");
  }
  if (samples1.empty()) throw Error("insufficient slices");
  ComparisonReport report;
  report.method = samples1.front().method;
  report.k = samples1.front().k;
  report.ranker1 = samples1.front().ranker;
  report.ranker2 = samples2.front().ranker;
  report.slices = samples1.size();

  std::vector<double> raw1;
  for (std::size_t i = 0; i < samples1.size(); ++i) {
    const MetricSample& s1 = samples1[i];
    const MetricSample& s2 = samples2[i];
    if (s1.method != report.method || s2.method != report.method ||
        s1.k != report.k || s2.k != report.k ||
        s1.slice_index != s2.slice_index) {
      throw Error("samples disagree on method, k or slice");
    }
    if (!(s1.value > 0.0)) throw Error("degenerate baseline");
    report.ratios.push_back(100.0 * (s2.value / s1.value));
    raw1.push_back(s1.value);
  }

  const Summary ratio = Summarize(report.ratios);
  const Summary base = Summarize(raw1);
  report.ranker2_norm = ratio.mean;
  report.std_error = ratio.std_error;
  report.ranker1_std_error = 100.0 * base.std_error / base.mean;

  const double lo2 = report.ranker2_norm - report.std_error;
  const double hi2 = report.ranker2_norm + report.std_error;
  const double lo1 = report.ranker1_norm - report.ranker1_std_error;
  const double hi1 = report.ranker1_norm + report.ranker1_std_error;
  report.separation = report.ranker2_norm >= 100.0 ? lo2 > hi1 : hi2 < lo1;
  return report;
}

}  // namespace rankeval

#endif  // RANKEVAL_METRICS_HPP_
