/*
 * Copyright 2026 The ameu-pricing Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AMEU_RANDOM_HPP
#define AMEU_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace ameu {

/// Philox4x32-10 block function (Salmon et al., SC'11). Inline so the
/// simulation loops can keep the rounds in registers.
inline std::array<std::uint32_t, 4> philox4x32(
    std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint64_t kMul0 = 0xD2511F53;
  constexpr std::uint64_t kMul1 = 0xCD9E8D57;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = kMul0 * ctr[0];
    const std::uint64_t p1 = kMul1 * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

/// Counter-based stream: key = seed, counter = (block, stream). Streams with
/// distinct ids never overlap, so path i draws the same numbers whichever
/// thread runs it.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (pos_ == kBuffered) refill();
    return buffer_[pos_++];
  }

  /// Uniform on the open interval (0, 1) with 32 bits of resolution.
  double uniform_open() {
    return (static_cast<double>((*this)()) + 0.5) * 0x1p-32;
  }

 private:
  static constexpr int kBlocks = 2;
  static constexpr int kBuffered = 4 * kBlocks;

  // Consecutive blocks are independent, so they are evaluated side by side
  // to overlap the multiply latency of their rounds.
  void refill() {
    constexpr std::uint64_t kMul0 = 0xD2511F53;
    constexpr std::uint64_t kMul1 = 0xCD9E8D57;
    std::array<std::array<std::uint32_t, 4>, kBlocks> c;
    for (int b = 0; b < kBlocks; ++b) {
      const std::uint64_t blk = block_ + static_cast<std::uint64_t>(b);
      c[b] = {static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32),
              static_cast<std::uint32_t>(stream_),
              static_cast<std::uint32_t>(stream_ >> 32)};
    }
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      for (auto& ctr : c) {
        const std::uint64_t p0 = kMul0 * ctr[0];
        const std::uint64_t p1 = kMul1 * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
      }
      key[0] += 0x9E3779B9;
      key[1] += 0xBB67AE85;
    }
    for (int b = 0; b < kBlocks; ++b) {
      for (int i = 0; i < 4; ++i) buffer_[4 * b + i] = c[b][i];
    }
    block_ += kBlocks;
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, kBuffered> buffer_{};
  int pos_ = kBuffered;
};

}  // namespace ameu

#endif  // AMEU_RANDOM_HPP
