// Copyright 2026 bitlab authors
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

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bitlab {

/// splitmix64. Chosen over std::mt19937 so that seeded outputs are
/// byte-identical across platforms and standard-library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// One bit at a time, refilled from next() in 64-bit chunks.
  std::uint8_t next_bit() {
    if (buffer_left_ == 0) {
      buffer_ = next();
      buffer_left_ = 64;
    }
    std::uint8_t b = static_cast<std::uint8_t>(buffer_ & 1u);
    buffer_ >>= 1;
    --buffer_left_;
    return b;
  }

  /// Uniform value in [0, bound), bound > 0. Rejection sampling.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
  std::uint64_t buffer_ = 0;
  int buffer_left_ = 0;
};

/// Derives an independent seed for stream index `stream` from a root seed.
/// All randomness in multi-trial commands flows through this so each trial
/// is individually reproducible.
std::uint64_t split_seed(std::uint64_t root_seed, std::uint64_t stream);

inline std::uint64_t floor_log2(std::uint64_t v) {
  return static_cast<std::uint64_t>(std::bit_width(v)) - 1;
}

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// Runs fn(begin, end) over [0, count) split into contiguous chunks across
/// at most `threads` worker threads. threads <= 1 runs inline. Results must
/// be keyed by index by the caller; chunking is deterministic.
void parallel_for_chunks(
    std::uint64_t count, unsigned threads,
    const std::function<void(std::uint64_t, std::uint64_t)>& fn);

/// Thread cap from the BITSTREAM_LAB_THREADS environment variable,
/// defaulting to the hardware concurrency.
unsigned thread_cap();

}  // namespace bitlab
