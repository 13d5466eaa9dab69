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


#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "semc/random.hpp"

namespace {

using semc::Philox;

TEST(Philox, KnownAnswerZero) {
  const auto out = Philox::generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, SameSeedAndStreamRepeat) {
  Philox a(42, 7);
  Philox b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Philox, StreamsDiffer) {
  Philox a(42, 7);
  Philox b(42, 8);
  Philox c(43, 7);
  int same_b = 0;
  int same_c = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    same_b += x == b();
    same_c += x == c();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(Philox, DiscardSkipsBlocks) {
  Philox a(1, 2);
  Philox b(1, 2);
  for (int i = 0; i < 10; ++i) a();
  b.discard_blocks(5);
  for (int i = 0; i < 10; ++i) ASSERT_EQ(a(), b());
}

TEST(StreamId, PacksFieldsInjectively) {
  std::set<std::uint64_t> ids;
  for (auto p : {semc::StreamPurpose::prior, semc::StreamPurpose::chain, semc::StreamPurpose::pilot}) {
    for (std::uint64_t r = 0; r < 20; ++r) {
      for (std::uint64_t c = 0; c < 60; ++c) ids.insert(semc::stream_id(p, r, c));
    }
  }
  EXPECT_EQ(ids.size(), 3u * 20u * 60u);
}

TEST(Uniform01, RangeAndMean) {
  Philox rng(3, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = semc::uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(UniformIndex, CoversRangeEvenly) {
  Philox rng(5, 1);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = semc::uniform_index(rng, 7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7, 400);
}

TEST(Shuffle, IsPermutationAndSeeded) {
  std::vector<int> a(100);
  std::iota(a.begin(), a.end(), 0);
  auto b = a;
  Philox r1(9, 9);
  Philox r2(9, 9);
  semc::shuffle(std::span<int>(a), r1);
  semc::shuffle(std::span<int>(b), r2);
  EXPECT_EQ(a, b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(a, sorted);
}

}  // namespace
