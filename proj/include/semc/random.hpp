// Copyright 2026 The semc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace semc {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 64-bit key comes from the run seed and the upper half of the 128-bit
/// counter holds a stream id, so every (seed, stream) pair is an independent
/// sequence that can be created anywhere without shared state. Each counter
/// block yields two 64-bit outputs.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox() : Philox(0, 0) {}
  Philox(std::uint64_t seed, std::uint64_t stream) : key_{lo(seed), hi(seed)}, stream_{stream} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (cached_ == 0) {
      block_ = generate({lo(counter_), hi(counter_), lo(stream_), hi(stream_)}, key_);
      ++counter_;
      cached_ = 2;
    }
    --cached_;
    const std::size_t offset = cached_ == 1 ? 0 : 2;
    return (static_cast<std::uint64_t>(block_[offset + 1]) << 32) | block_[offset];
  }

  /// Skips `blocks` counter blocks (2 outputs each).
  void discard_blocks(std::uint64_t blocks) {
    counter_ += blocks;
    cached_ = 0;
  }

  /// One Philox4x32-10 bijection, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> generate(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {hi(p1) ^ ctr[1] ^ key[0], lo(p1), hi(p0) ^ ctr[3] ^ key[1], lo(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t lo(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
  static constexpr std::uint32_t hi(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int cached_ = 0;
};

/// What a random stream is used for. Part of the stream id, so streams for
/// different purposes never overlap even with equal rung/chain indices.
enum class StreamPurpose : std::uint8_t {
  prior = 1,
  chain = 2,
  exchange_index = 3,
  pilot = 4,
  replica = 5,
  data = 6,
  test = 7,
};

/// Packs (purpose, rung, chain) injectively into a 64-bit stream id:
/// 8 bits purpose | 24 bits rung | 32 bits chain.
constexpr std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t rung, std::uint64_t chain = 0) {
  return (static_cast<std::uint64_t>(purpose) << 56) | ((rung & 0xFFFFFFull) << 32) | (chain & 0xFFFFFFFFull);
}

inline Philox make_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t rung, std::uint64_t chain = 0) {
  return Philox(seed, stream_id(purpose, rung, chain));
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [a, b).
template <class Rng>
double uniform(Rng& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}

/// Unbiased uniform integer in [0, n) (Lemire's multiply-shift rejection).
template <class Rng>
std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Fisher-Yates shuffle driven by uniform_index, so the permutation depends
/// only on the stream and not on the standard library in use.
template <class T, class Rng>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace semc
