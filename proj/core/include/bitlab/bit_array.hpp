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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitlab {

/// Fixed-length sequence of 0/1 values. One byte per bit internally; the
/// packed form exists only at the serialization boundary.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(std::size_t size) : bits_(size, 0) {}

  /// Parses an ASCII 0/1 string.
  static BitArray from_string(std::string_view text);
  /// Adopts a 0/1 byte vector; throws on any other value.
  static BitArray from_bits(std::vector<std::uint8_t> bits);

  std::string to_string() const;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, std::uint8_t bit);
  void push_back(std::uint8_t bit);
  void append(const BitArray& other);
  /// Drops the leftmost bit and appends `bit` on the right; size unchanged.
  void shift_left_append(std::uint8_t bit);

  std::size_t count_ones() const;
  BitArray slice(std::size_t pos, std::size_t len) const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  /// Packed little-endian form: 8-byte little-endian bit count, then the
  /// bits with bit i stored at byte i/8, position i%8.
  std::vector<std::uint8_t> to_packed() const;
  static BitArray from_packed(std::span<const std::uint8_t> bytes);

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// `times` copies of the 0/1 string `unit` back to back.
BitArray repeat(std::string_view unit, std::size_t times);

}  // namespace bitlab
