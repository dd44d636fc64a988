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

// Seeded random streams.
//
// Every random draw in the library comes from a stream keyed on a
// (tag, seed, coordinates...) tuple, so results never depend on scheduling
// or on the platform. Millions of short streams are opened per run (one per
// query, one per scored doc), so the engine is SplitMix64, whose state is a
// single word, rather than a Mersenne Twister with a 2.5 KB state to fill.
// The standard distributions are implementation-defined, so conversions to
// doubles, bounded integers and gaussians are done here explicitly.

#ifndef RANKEVAL_RANDOM_HPP_
#define RANKEVAL_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace rankeval {

// SplitMix64 (Steele, Lea and Flood). Satisfies
// std::uniform_random_bit_generator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Mix(state_ += 0x9e3779b97f4a7c15ULL); }

  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

using Engine = SplitMix64;

// Stream tags keep draws for different purposes independent even when they
// share a seed and an index.
enum class StreamTag : std::uint32_t {
  kCandidates = 1,
  kPresentation = 2,
  kClicks = 3,
  kRankerNoise = 4,
  kSlice = 5,
  kLeaderCoin = 6,
};

// 64-bit FNV-1a. Used to turn ids into stream coordinates.
constexpr std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline Engine MakeStream(StreamTag tag,
                         std::initializer_list<std::uint64_t> coords) {
  std::uint64_t state = SplitMix64::Mix(static_cast<std::uint64_t>(tag));
  for (std::uint64_t c : coords) {
    state = SplitMix64::Mix(state ^ SplitMix64::Mix(c + 0x632be59bd9b4e019ULL));
  }
  return Engine(state);
}

// Uniform on [0, 1) with 53 random bits.
inline double Uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer on [0, bound). Rejection sampling, no modulo bias.
inline std::uint64_t UniformBelow(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

// Standard normal draw (Box-Muller, one value per call).
inline double StandardNormal(Engine& eng) {
  double u1 = Uniform01(eng);
  while (u1 <= 0.0) u1 = Uniform01(eng);
  const double u2 = Uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Fisher-Yates; every permutation is equally likely.
template <typename T>
void Shuffle(std::span<T> items, Engine& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = UniformBelow(eng, i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace rankeval

#endif  // RANKEVAL_RANDOM_HPP_
