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

#include "bitlab/hard_instance.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "bitlab/errors.hpp"
#include "bitlab/geometry.hpp"
#include "bitlab/util.hpp"

namespace bitlab {

namespace {

void fill_pad_repeats(BitArray& arr, std::uint64_t start, std::uint64_t len,
                      const char* unit4) {
  if (len % 4 != 0)
    throw ConstructionError("padding stretch not a multiple of 4: len = " +
                            std::to_string(len));
  for (std::uint64_t i = 0; i < len; ++i)
    arr.set(start + i, static_cast<std::uint8_t>(unit4[i % 4] - '0'));
}

void check_balanced(const BitArray& arr, const char* what) {
  if (arr.count_ones() * 2 != arr.size())
    throw ConstructionError(std::string(what) + ": ones/zeros not balanced");
}

}  // namespace

std::uint64_t gadget_count(std::uint64_t ell) { return floor_log2(ell) / 2; }

void require_gadget_ell(std::uint64_t ell) {
  if (!std::has_single_bit(ell) || ell < kMinGadgetEll)
    throw std::invalid_argument("ell must be a power of two >= 16");
}

std::uint64_t u_ell_length(std::uint64_t ell) {
  return ell * floor_log2(ell);
}

BlockSpec block_spec(std::uint64_t ell, std::uint64_t j) {
  require_gadget_ell(ell);
  if (j >= gadget_count(ell))
    throw std::invalid_argument("gadget index out of range");
  const std::uint64_t zero_run = (std::uint64_t{1} << j) + kGadgetZeroRunBase;
  if (zero_run > ell / 4)
    throw std::invalid_argument("gadget zero run exceeds ell/4");
  return BlockSpec{ell, j, zero_run};
}

BitArray build_block(std::uint64_t ell, std::uint64_t j) {
  const BlockSpec spec = block_spec(ell, j);
  const std::uint64_t pow_j = std::uint64_t{1} << j;
  BitArray block;
  block.push_back(1);
  for (std::uint64_t i = 0; i < spec.zero_run; ++i) block.push_back(0);
  for (std::uint64_t i = 0; i < ell / 2 + 1; ++i) block.push_back(1);
  for (std::uint64_t i = 0; i < ell / 2 - pow_j; ++i) block.push_back(0);
  if (block.size() != ell + 4)
    throw ConstructionError("gadget length mismatch: got " +
                            std::to_string(block.size()) + ", want " +
                            std::to_string(ell + 4));
  check_balanced(block, "gadget block");
  return block;
}

BitArray build_f_ell(std::uint64_t ell) {
  require_gadget_ell(ell);
  const std::uint64_t total = u_ell_length(ell) + ell;
  const std::uint64_t regions = gadget_count(ell);
  BitArray out;
  for (std::uint64_t j = 0; j < regions; ++j) {
    out.append(repeat("1001", ell / 4 - 1));
    out.append(build_block(ell, j));
  }
  if (out.size() > total || (total - out.size()) % 4 != 0)
    throw ConstructionError(
        "subarray layout cannot reach its exact length: residual = " +
        std::to_string(static_cast<std::int64_t>(total) -
                       static_cast<std::int64_t>(out.size())));
  out.append(repeat("1001", (total - out.size()) / 4));
  check_balanced(out, "subarray");

  // Gadget j must start at (2j+1)*ell - 4. Forced by the region lengths,
  // checked anyway since the frame accounting depends on it.
  for (std::uint64_t j = 0; j < regions; ++j) {
    const std::uint64_t x = (2 * j + 1) * ell - 4;
    if (out[x] != 1 || out[x + 1] != 0 || out[x + 2] != 0 ||
        out[x + 3 + (std::uint64_t{1} << j)] != 1)
      throw ConstructionError("gadget anchor positions violated at j = " +
                              std::to_string(j));
  }
  return out;
}

BitArray build_f(std::uint64_t n, std::vector<RegionLayout>* layout_out) {
  const LengthSet ls = lengths_set(n);

  std::vector<RegionLayout> layout;
  for (std::uint64_t ell : ls.lengths) {
    require_gadget_ell(ell);
    layout.push_back(RegionLayout{ell, pattern_region_start(n, ell),
                                  u_ell_length(ell) + ell});
  }
  // Larger ell sits further from the right end; order regions by position.
  std::sort(layout.begin(), layout.end(),
            [](const RegionLayout& a, const RegionLayout& b) {
              return a.start < b.start;
            });
  for (std::size_t i = 0; i + 1 < layout.size(); ++i)
    if (layout[i].start + layout[i].len > layout[i + 1].start)
      throw ConstructionError("subarray regions overlap");
  if (layout.back().start + layout.back().len > n)
    throw ConstructionError("subarray region reaches past the array end");

  BitArray f(n);
  std::uint64_t cursor = 0;
  for (const RegionLayout& r : layout) {
    fill_pad_repeats(f, cursor, r.start - cursor, "0101");
    const BitArray sub = build_f_ell(r.ell);
    for (std::uint64_t i = 0; i < sub.size(); ++i) f.set(r.start + i, sub[i]);
    cursor = r.start + r.len;
  }
  fill_pad_repeats(f, cursor, n - cursor, "0101");

  check_balanced(f, "fixed array");
  for (const RegionLayout& r : layout) {
    const BitArray prefix = f.slice(0, r.start);
    if (prefix.count_ones() * 2 != prefix.size())
      throw ConstructionError("prefix before a subarray not balanced");
    const std::uint64_t trailing = n - (r.start + r.len - 1);
    if (trailing != gap_length(n, r.ell) + 1)
      throw ConstructionError("subarray trailing distance violated");
  }

  if (layout_out) *layout_out = layout;
  return f;
}

BitArray sample_u(std::uint64_t len, std::uint64_t seed) {
  if (len % 4 != 0)
    throw std::invalid_argument("update length must be divisible by 4");
  SplitMix64 rng(seed);
  BitArray out(len);
  for (std::uint64_t b = 0; 4 * b < len; ++b) {
    const bool flipped = rng.next_bit() != 0;  // 1010 instead of 0101
    out.set(4 * b + 0, flipped ? 1 : 0);
    out.set(4 * b + 1, flipped ? 0 : 1);
    out.set(4 * b + 2, flipped ? 1 : 0);
    out.set(4 * b + 3, flipped ? 0 : 1);
  }
  return out;
}

BitArray sample_bits(std::uint64_t len, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BitArray out(len);
  for (std::uint64_t i = 0; i < len; ++i) out.set(i, rng.next_bit());
  return out;
}

HardInstance make_l2_instance(std::uint64_t n, std::uint64_t seed) {
  HardInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.pattern = build_f(n, &inst.layout);
  inst.updates = sample_u(n, seed);
  return inst;
}

}  // namespace bitlab
