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

#include "bitlab/bit_array.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace bitlab {

BitArray BitArray::from_string(std::string_view text) {
  BitArray out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("BitArray: character outside {0,1}");
    out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

BitArray BitArray::from_bits(std::vector<std::uint8_t> bits) {
  for (std::uint8_t b : bits)
    if (b > 1) throw std::invalid_argument("BitArray: value outside {0,1}");
  BitArray out;
  out.bits_ = std::move(bits);
  return out;
}

std::string BitArray::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

void BitArray::set(std::size_t i, std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("BitArray: value outside {0,1}");
  bits_.at(i) = bit;
}

void BitArray::push_back(std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("BitArray: value outside {0,1}");
  bits_.push_back(bit);
}

void BitArray::append(const BitArray& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitArray::shift_left_append(std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("BitArray: value outside {0,1}");
  if (bits_.empty()) throw std::out_of_range("BitArray: shift on empty array");
  std::memmove(bits_.data(), bits_.data() + 1, bits_.size() - 1);
  bits_.back() = bit;
}

std::size_t BitArray::count_ones() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

BitArray BitArray::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size())
    throw std::out_of_range("BitArray::slice: range past end");
  BitArray out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

std::vector<std::uint8_t> BitArray::to_packed() const {
  const std::uint64_t n = bits_.size();
  std::vector<std::uint8_t> out(8 + (n + 7) / 8, 0);
  for (int k = 0; k < 8; ++k)
    out[static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>((n >> (8 * k)) & 0xff);
  for (std::uint64_t i = 0; i < n; ++i)
    if (bits_[i]) out[8 + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return out;
}

BitArray BitArray::from_packed(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8)
    throw std::invalid_argument("BitArray: packed form shorter than header");
  std::uint64_t n = 0;
  for (int k = 0; k < 8; ++k)
    n |= std::uint64_t(bytes[static_cast<std::size_t>(k)]) << (8 * k);
  if (bytes.size() != 8 + (n + 7) / 8)
    throw std::invalid_argument("BitArray: packed length mismatch");
  BitArray out(n);
  for (std::uint64_t i = 0; i < n; ++i)
    out.bits_[i] = (bytes[8 + i / 8] >> (i % 8)) & 1u;
  return out;
}

BitArray repeat(std::string_view unit, std::size_t times) {
  BitArray u = BitArray::from_string(unit);
  BitArray out;
  for (std::size_t i = 0; i < times; ++i) out.append(u);
  return out;
}

}  // namespace bitlab
