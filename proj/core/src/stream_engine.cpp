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

#include "bitlab/stream_engine.hpp"

#include <stdexcept>

namespace bitlab {

StreamEngine::StreamEngine(BitArray pattern, Mode mode)
    : pattern_(std::move(pattern)), window_(pattern_.size()), mode_(mode) {
  if (pattern_.empty()) throw std::invalid_argument("empty pattern");
  if (pattern_.size() > kMaxExactLength)
    throw std::overflow_error("pattern longer than the exact arithmetic guard");
  pattern_ones_ = pattern_.count_ones();
  pattern_one_pos_.reserve(pattern_ones_);
  pattern_zero_pos_.reserve(pattern_.size() - pattern_ones_);
  for (std::size_t i = 0; i < pattern_.size(); ++i) {
    auto& bucket = pattern_[i] ? pattern_one_pos_ : pattern_zero_pos_;
    bucket.push_back(static_cast<std::int64_t>(i));
  }
}

StreamEngine::Output StreamEngine::push(std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("bit outside {0,1}");
  const std::size_t n = window_.size();
  window_ones_ -= window_[0];
  window_.shift_left_append(bit);
  window_ones_ += bit;
  ++arrivals_;
  return Output{current_value(), arrivals_ < n};
}

Distance StreamEngine::current_value() const {
  const auto w = window_.bits();
  if (mode_ == Mode::convolution) {
    const auto p = pattern_.bits();
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      acc += static_cast<std::int64_t>(p[i] & w[i]);
    return Distance::finite(acc);
  }
  if (window_ones_ != pattern_ones_) return Distance::infinite();
  // Matching rule: k-th one of the window pairs with the k-th one of the
  // pattern, same for zeros. One pass over the window.
  std::int64_t acc = 0;
  std::size_t io = 0, iz = 0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    const std::int64_t target =
        w[p] ? pattern_one_pos_[io++] : pattern_zero_pos_[iz++];
    const std::int64_t d = target - static_cast<std::int64_t>(p);
    acc += d * d;
  }
  return Distance::finite(acc);
}

Distance offline_output(const BitArray& pattern, const BitArray& window,
                        Mode mode) {
  if (mode == Mode::convolution)
    return Distance::finite(inner_product(pattern, window));
  return l2_rearrangement(pattern, window);
}

}  // namespace bitlab
