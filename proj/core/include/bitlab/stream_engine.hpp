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

#include <cstdint>
#include <vector>

#include "bitlab/bit_array.hpp"
#include "bitlab/distance.hpp"

namespace bitlab {

enum class Mode { convolution, l2_rearrangement };

/// Online engine: a fixed pattern F of length n and a live window holding
/// the last n appended bits. Each push shifts the window left, appends the
/// new bit and reports the distance between F and the window. The window
/// starts all-zeros; outputs are flagged warm-up until n bits have arrived.
///
/// Every output is recomputed from the live window (linear time per
/// arrival); no sublinear update scheme is attempted or claimed.
/// Single-owner mutable; distinct engines may run concurrently.
class StreamEngine {
 public:
  struct Output {
    Distance value;
    bool warmup;
  };

  StreamEngine(BitArray pattern, Mode mode);

  Output push(std::uint8_t bit);

  /// Number of arrivals so far, counted from 1 for the first push.
  std::uint64_t arrivals_seen() const { return arrivals_; }
  const BitArray& pattern() const { return pattern_; }
  const BitArray& window() const { return window_; }
  Mode mode() const { return mode_; }

 private:
  Distance current_value() const;

  BitArray pattern_;
  BitArray window_;
  Mode mode_;
  std::uint64_t arrivals_ = 0;
  std::size_t window_ones_ = 0;
  std::size_t pattern_ones_ = 0;
  std::vector<std::int64_t> pattern_one_pos_;
  std::vector<std::int64_t> pattern_zero_pos_;
};

/// From-scratch evaluation of one window against a pattern; the reference
/// the engine is checked against.
Distance offline_output(const BitArray& pattern, const BitArray& window,
                        Mode mode);

}  // namespace bitlab
