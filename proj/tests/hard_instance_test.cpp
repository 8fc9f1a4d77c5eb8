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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bitlab/distance.hpp"
#include "bitlab/errors.hpp"
#include "bitlab/geometry.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/util.hpp"

using namespace bitlab;

namespace {
constexpr std::uint64_t kN16 = std::uint64_t{1} << 16;
}

TEST_CASE("gadget block anchors") {
  // Second one must land at relative position 3 + 2^j.
  const BitArray b0 = build_block(16, 0);
  CHECK(b0.to_string() == "10001111111110000000");
  CHECK(b0[4] == 1);
  const BitArray b1 = build_block(16, 1);
  CHECK(b1[5] == 1);
  CHECK(b1[4] == 0);
  // Balanced over the calibrated span, any j.
  const BitArray b2 = build_block(64, 2);
  CHECK(b2.size() == 64 + 4);
  CHECK(b2.count_ones() * 2 == b2.size());
  CHECK(block_spec(64, 2).zero_run == 4 + kGadgetZeroRunBase);
  CHECK_THROWS_AS(build_block(16, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_block(8, 0), std::invalid_argument);
}

TEST_CASE("subarray layout: length, balance, gadget positions") {
  for (std::uint64_t ell : {std::uint64_t{16}, std::uint64_t{32},
                            std::uint64_t{64}, std::uint64_t{4096}}) {
    const BitArray f = build_f_ell(ell);
    CHECK(f.size() == ell * floor_log2(ell) + ell);
    CHECK(f.count_ones() * 2 == f.size());
    for (std::uint64_t j = 0; j < gadget_count(ell); ++j) {
      const std::uint64_t x = (2 * j + 1) * ell - 4;
      CHECK(f[x] == 1);
      CHECK(f[x + 1] == 0);
      CHECK(f[x + 2] == 0);
      CHECK(f[x + 3 + (std::uint64_t{1} << j)] == 1);
      // Everything before the gadget in its two-block region is 1001 pads.
      for (std::uint64_t p = 2 * j * ell; p < x; p += 4) {
        CHECK(f[p] == 1);
        CHECK(f[p + 1] == 0);
        CHECK(f[p + 2] == 0);
        CHECK(f[p + 3] == 1);
      }
    }
  }
}

TEST_CASE("full fixed array at n = 2^16") {
  std::vector<RegionLayout> layout;
  const BitArray f = build_f(kN16, &layout);
  REQUIRE(layout.size() == 2);
  CHECK(layout[0].ell == 4096);
  CHECK(layout[0].start == 11264);
  CHECK(layout[1].ell == 16);
  CHECK(layout[1].start == 65452);

  // Global balance is forced by the equal-count invariant.
  CHECK(f.count_ones() == kN16 / 2);

  for (const RegionLayout& r : layout) {
    // Trailing distance: the last region index sits gap_len + 1 positions
    // from the right end counted inclusively (so gap_len positions follow).
    CHECK(kN16 - (r.start + r.len - 1) == gap_length(kN16, r.ell) + 1);
    // The prefix before each region is balanced.
    const BitArray prefix = f.slice(0, r.start);
    CHECK(prefix.count_ones() * 2 == prefix.size());
    // Region content is the standalone subarray.
    CHECK(f.slice(r.start, r.len) == build_f_ell(r.ell));
  }

  // Aligned 4-frames outside the regions are 01 repeats.
  auto in_region = [&](std::uint64_t p) {
    for (const RegionLayout& r : layout)
      if (p >= r.start && p < r.start + r.len) return true;
    return false;
  };
  for (std::uint64_t p = 0; p < kN16; p += 4) {
    if (in_region(p) || in_region(p + 3)) continue;
    CHECK(f[p] == 0);
    CHECK(f[p + 1] == 1);
    CHECK(f[p + 2] == 0);
    CHECK(f[p + 3] == 1);
  }
}

TEST_CASE("update sampler: block shape and determinism") {
  const BitArray u = sample_u(64, 9);
  for (std::size_t i = 0; i < u.size(); i += 4) {
    const std::uint64_t ones = u[i] + u[i + 1] + u[i + 2] + u[i + 3];
    CHECK(ones == 2);
    const bool flat = u[i] == 0 && u[i + 1] == 1 && u[i + 2] == 0 && u[i + 3] == 1;
    const bool flip = u[i] == 1 && u[i + 1] == 0 && u[i + 2] == 1 && u[i + 3] == 0;
    CHECK((flat || flip));
  }
  CHECK(sample_u(64, 9) == u);
  CHECK(sample_u(64, 10) != u);
  CHECK_THROWS_AS(sample_u(63, 1), std::invalid_argument);
}

TEST_CASE("update sampler: block choice is unbiased (binomial 3-sigma)") {
  // 10^3 samples of n = 2^20: the flipped-block count over all samples is
  // binomial(N, 1/2) with N = 10^3 * 2^18 blocks.
  const std::uint64_t n = std::uint64_t{1} << 20;
  const std::uint64_t samples = 1000;
  const std::uint64_t blocks_per_sample = n / 4;
  std::uint64_t flipped = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const BitArray u = sample_u(n, split_seed(20260515, s));
    for (std::uint64_t b = 0; b < n; b += 4) flipped += u[b];
  }
  const double total = static_cast<double>(samples * blocks_per_sample);
  const double sigma = std::sqrt(total) / 2.0;
  const double deviation = std::abs(static_cast<double>(flipped) - total / 2.0);
  CHECK(deviation <= 3.0 * sigma);
}

TEST_CASE("alignment: update block at region offset 4i at the right arrival") {
  // At 0-based steady-state arrival a = n + t3 - 4i (second pass of the
  // update array), the window slice at region.start + 4i holds the
  // recovery-window updates exactly.
  const HardInstance inst = make_l2_instance(kN16, 77);
  for (const RegionLayout& r : inst.layout) {
    const IntervalSpec s = interval_spec(kN16, r.ell, 0);
    const std::uint64_t m = u_ell_length(r.ell);
    for (std::uint64_t i : {std::uint64_t{0}, r.ell / 8, r.ell / 4 - 1}) {
      const std::uint64_t arrival = kN16 + s.t3 - 4 * i;
      bool match = true;
      for (std::uint64_t p = 0; p < m && match; ++p) {
        const std::uint64_t stream_index =
            (arrival - kN16 + 1 + (r.start + 4 * i + p)) % kN16;
        if (inst.updates[stream_index] != inst.updates[p]) match = false;
      }
      CHECK(match);
    }
  }
}

TEST_CASE("padding frames cost 2 whatever the update block chose") {
  // Swapping any update block that faces 1001 padding for its alternative
  // leaves that frame's cost at exactly 2.
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const std::uint64_t m = u_ell_length(ell);
  const BitArray window = f.slice(0, m);
  BitArray u = sample_u(m, 31);
  const auto base_profile = contribution_profile(window, u);
  for (std::uint64_t frame = 0; frame < m / 4; ++frame) {
    const std::uint64_t p = 4 * frame;
    const bool pad_frame = window[p] == 1 && window[p + 1] == 0 &&
                           window[p + 2] == 0 && window[p + 3] == 1;
    if (!pad_frame) continue;
    const std::int64_t cost = base_profile[p] + base_profile[p + 1] +
                              base_profile[p + 2] + base_profile[p + 3];
    CHECK(cost == 2);
    // Flip the block and re-check.
    BitArray alt = u;
    for (int k = 0; k < 4; ++k) alt.set(p + k, 1 - u[p + k]);
    const auto alt_profile = contribution_profile(window, alt);
    CHECK(alt_profile[p] + alt_profile[p + 1] + alt_profile[p + 2] +
              alt_profile[p + 3] ==
          2);
  }
}

TEST_CASE("even-block prefix contribution is the fixed constant") {
  for (std::uint64_t ell : {std::uint64_t{16}, std::uint64_t{64}}) {
    const BitArray f = build_f_ell(ell);
    const std::uint64_t m = u_ell_length(ell);
    const BitArray window = f.slice(0, m);
    for (int trial = 0; trial < 50; ++trial) {
      const BitArray u = sample_u(m, split_seed(123, trial));
      const auto profile = contribution_profile(window, u);
      for (std::uint64_t j = 0; j < gadget_count(ell); ++j) {
        std::int64_t sum = 0;
        for (std::uint64_t p = 2 * j * ell; p < 2 * j * ell + ell - 4; ++p)
          sum += profile[p];
        CHECK(sum == static_cast<std::int64_t>(ell / 2 - 2));
      }
    }
  }
}

TEST_CASE("sliding outputs on sampled updates are finite") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  for (int trial = 0; trial < 20; ++trial) {
    const BitArray u = sample_u(u_ell_length(ell), split_seed(5, trial));
    for (const Distance& d : slide_l2(f, u)) CHECK(d.is_finite());
  }
}

TEST_CASE("instance builder is deterministic in the seed") {
  const HardInstance a = make_l2_instance(kN16, 5);
  const HardInstance b = make_l2_instance(kN16, 5);
  CHECK(a.pattern == b.pattern);
  CHECK(a.updates == b.updates);
  CHECK(make_l2_instance(kN16, 6).updates != a.updates);
}
