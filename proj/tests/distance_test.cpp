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

#include <numeric>
#include <vector>

#include "bitlab/distance.hpp"
#include "bitlab/errors.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/util.hpp"

using namespace bitlab;

namespace {

BitArray bits(const char* s) { return BitArray::from_string(s); }

BitArray random_bits(std::uint64_t len, std::uint64_t seed) {
  return sample_bits(len, seed);
}

}  // namespace

TEST_CASE("inner product basics") {
  CHECK(inner_product(bits("101"), bits("111")) == 2);
  CHECK(inner_product(bits("0000"), bits("1011")) == 0);
  CHECK(inner_product(bits("1111"), bits("1010")) == 2);
  CHECK_THROWS_AS(inner_product(bits("10"), bits("100")), std::invalid_argument);
}

TEST_CASE("slide_conv worked example") {
  const auto out = slide_conv(bits("11011"), bits("11"));
  CHECK(out == std::vector<std::int64_t>{2, 1, 1, 2});
  CHECK(slide_conv(bits("11011"), bits("00")) ==
        std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK_THROWS_AS(slide_conv(bits("1"), bits("10")), std::invalid_argument);
}

TEST_CASE("windowing core is linear") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> f(20), u(7), v(7), sum(7);
    for (auto& x : f) x = static_cast<std::int64_t>(rng.next_below(9)) - 4;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = static_cast<std::int64_t>(rng.next_below(9)) - 4;
      v[i] = static_cast<std::int64_t>(rng.next_below(9)) - 4;
      sum[i] = u[i] + v[i];
    }
    const auto a = slide_inner_products(f, u);
    const auto b = slide_inner_products(f, v);
    const auto c = slide_inner_products(f, sum);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == a[i] + b[i]);
  }
}

TEST_CASE("l2 rearrangement basics") {
  CHECK(l2_rearrangement(bits("0101"), bits("0101")) == Distance::finite(0));
  CHECK(l2_rearrangement(bits("1001"), bits("0101")) == Distance::finite(2));
  CHECK(l2_rearrangement(bits("1001"), bits("1010")) == Distance::finite(2));
  CHECK(l2_rearrangement(bits("00"), bits("01")) == Distance::infinite());
  CHECK_THROWS_AS(l2_rearrangement(bits("0"), bits("01")),
                  std::invalid_argument);
}

TEST_CASE("brute-force oracle basics") {
  CHECK(l2_bruteforce(bits("01"), bits("10")) == Distance::finite(2));
  CHECK(l2_bruteforce(bits("10110"), bits("10110")) == Distance::finite(0));
  CHECK(l2_bruteforce(bits("00"), bits("01")) == Distance::infinite());
  CHECK_THROWS_AS(l2_bruteforce(bits("00000000111"), bits("00000001110")),
                  OracleScaleError);
}

TEST_CASE("matching rule agrees with brute force, exhaustive length <= 6") {
  for (std::size_t len = 1; len <= 6; ++len) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << len); ++a) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
        BitArray sa(len), sb(len);
        for (std::size_t i = 0; i < len; ++i) {
          sa.set(i, (a >> i) & 1);
          sb.set(i, (b >> i) & 1);
        }
        CHECK(l2_rearrangement(sa, sb) == l2_bruteforce(sa, sb));
      }
    }
  }
}

TEST_CASE("matching rule agrees with brute force, random up to length 10") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t len = 1 + rng.next_below(10);
    const BitArray a = random_bits(len, rng.next());
    const BitArray b = random_bits(len, rng.next());
    CHECK(l2_rearrangement(a, b) == l2_bruteforce(a, b));
  }
}

TEST_CASE("l2 is symmetric, including the infinite case") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t len = 1 + rng.next_below(12);
    const BitArray a = random_bits(len, rng.next());
    const BitArray b = random_bits(len, rng.next());
    CHECK(l2_rearrangement(a, b) == l2_rearrangement(b, a));
  }
}

TEST_CASE("contribution profile sums to the distance") {
  SplitMix64 rng(99);
  int finite_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t len = 2 + rng.next_below(14);
    const BitArray a = random_bits(len, rng.next());
    const BitArray b = random_bits(len, rng.next());
    const Distance d = l2_rearrangement(a, b);
    if (!d.is_finite()) {
      CHECK_THROWS_AS(contribution_profile(a, b), NoValidPermutationError);
      continue;
    }
    ++finite_seen;
    const auto profile = contribution_profile(a, b);
    CHECK(std::accumulate(profile.begin(), profile.end(), std::int64_t{0}) ==
          d.value());
  }
  CHECK(finite_seen > 50);
}

TEST_CASE("contribution profile worked examples") {
  const auto p = contribution_profile(bits("1001"), bits("0101"));
  CHECK(std::accumulate(p.begin(), p.end(), std::int64_t{0}) == 2);
  CHECK(contribution_profile(bits("0110"), bits("0110")) ==
        std::vector<std::int64_t>{0, 0, 0, 0});
  // Hand-built displacement table. a-ones {0,3,5,6} pair with b-ones
  // {1,2,4,6}; a-zeros {1,2,4,7} pair with b-zeros {0,3,5,7}.
  const auto table =
      contribution_profile(bits("10010110"), bits("01101010"));
  CHECK(table == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1, 0, 0});
}

TEST_CASE("slide_l2 layout contract") {
  // f = u + ell with u = ell * lg(ell): smallest case ell = 4, u len 8.
  const BitArray u = bits("01100110");
  BitArray f = u;
  f.append(bits("0110"));
  const auto out = slide_l2(f, u);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == Distance::finite(0));  // window 0 equals u itself
  CHECK_THROWS_AS(slide_l2(bits("0101"), bits("01")), std::invalid_argument);
}

TEST_CASE("slide_l2 equals per-window recomputation on a real subarray") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const BitArray u = sample_u(u_ell_length(ell), 5);
  const auto out = slide_l2(f, u);
  REQUIRE(out.size() == ell / 4);
  for (std::uint64_t i = 0; i < out.size(); ++i) {
    CHECK(out[i] == l2_rearrangement(f.slice(4 * i, u.size()), u));
    CHECK(out[i].is_finite());
  }
}

TEST_CASE("distance values survive the exact-arithmetic guard") {
  BitArray a(kMaxExactLength + 1), b(kMaxExactLength + 1);
  CHECK_THROWS_AS(l2_rearrangement(a, b), std::overflow_error);
}
