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

#include "bitlab/distance.hpp"
#include "bitlab/errors.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/recovery.hpp"
#include "bitlab/util.hpp"

using namespace bitlab;

namespace {

// Update array with chosen frame flags for the final frame of each even
// block; all other frames from the seed.
BitArray crafted_u(std::uint64_t ell, const std::vector<std::uint8_t>& last_v,
                   std::uint64_t seed) {
  BitArray u = sample_u(u_ell_length(ell), seed);
  for (std::uint64_t j = 0; j < last_v.size(); ++j) {
    const std::uint64_t p = (2 * j + 1) * ell - 4;
    u.set(p + 0, last_v[j] ? 1 : 0);
    u.set(p + 1, last_v[j] ? 0 : 1);
    u.set(p + 2, last_v[j] ? 1 : 0);
    u.set(p + 3, last_v[j] ? 0 : 1);
  }
  return u;
}

}  // namespace

TEST_CASE("frame sum at offset zero: crafted flags v = (1,0) give 11") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const BitArray u = crafted_u(ell, {1, 0}, 40);
  const RecoveryInstance inst = make_recovery_instance(ell, f, u);
  const DStar d = compute_dstar(inst, 0, std::vector<BitArray>(2));
  // sum_j (v_j*2^{j+1} + 2^{2j} + 2) = (2+1+2) + (0+4+2) = 11
  CHECK(d.value == 11);
  CHECK(d.reduced == 2);
}

TEST_CASE("frame sum at offset zero: all flags clear reduce to zero") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const BitArray u = crafted_u(ell, {0, 0}, 41);
  const DStar d =
      compute_dstar(make_recovery_instance(ell, f, u), 0, std::vector<BitArray>(2));
  CHECK(d.reduced == 0);
  CHECK(d.value == (1 + 2) + (4 + 2));
}

TEST_CASE("frame sum formula holds for random updates, via the profile oracle") {
  for (std::uint64_t ell : {std::uint64_t{16}, std::uint64_t{64}}) {
    const BitArray f = build_f_ell(ell);
    const std::uint64_t m = u_ell_length(ell);
    const std::uint64_t gadgets = gadget_count(ell);
    const BitArray window = f.slice(0, m);
    for (int trial = 0; trial < 100; ++trial) {
      const BitArray u = sample_u(m, split_seed(61, trial));
      const RecoveryInstance inst = make_recovery_instance(ell, f, u);
      const DStar d =
          compute_dstar(inst, 0, std::vector<BitArray>(gadgets));

      // Independent route: per-position displacement profile.
      const auto profile = contribution_profile(window, u);
      std::int64_t expect = 0;
      for (std::uint64_t j = 0; j < gadgets; ++j) {
        const std::uint64_t p = (2 * j + 1) * ell - 4;
        const std::int64_t frame_cost =
            profile[p] + profile[p + 1] + profile[p + 2] + profile[p + 3];
        const std::int64_t v = u[p] == 1 ? 1 : 0;
        CHECK(frame_cost == v * (std::int64_t{1} << (j + 1)) +
                                (std::int64_t{1} << (2 * j)) + 2);
        expect += frame_cost;
      }
      CHECK(d.value == expect);
    }
  }
}

TEST_CASE("bit extraction") {
  CHECK(extract_vbits(DStar{0, 0}, 3) ==
        std::vector<std::uint8_t>{0, 0, 0});
  // 10 = 2^1 + 2^3 -> v = (1, 0, 1)
  CHECK(extract_vbits(DStar{0, 10}, 3) ==
        std::vector<std::uint8_t>{1, 0, 1});
  // A single top power of two: 2^J flags only v_{J-1}.
  CHECK(extract_vbits(DStar{0, 8}, 3) ==
        std::vector<std::uint8_t>{0, 0, 1});
  // Bits outside the extractable range are loud failures, never dropped.
  CHECK_THROWS_AS(extract_vbits(DStar{0, 16}, 3), DecodeFailureError);
  CHECK_THROWS_AS(extract_vbits(DStar{0, 1}, 3), DecodeFailureError);
}

TEST_CASE("round-trip recovery, sampled updates") {
  for (std::uint64_t ell : {std::uint64_t{16}, std::uint64_t{64}}) {
    const BitArray f = build_f_ell(ell);
    const std::uint64_t m = u_ell_length(ell);
    for (int trial = 0; trial < 100; ++trial) {
      const BitArray u = sample_u(m, split_seed(62, trial));
      const auto recovered =
          recover_even_blocks(make_recovery_instance(ell, f, u));
      REQUIRE(recovered.size() == gadget_count(ell));
      for (std::uint64_t j = 0; j < recovered.size(); ++j)
        CHECK(recovered[j] == u.slice(2 * j * ell, ell));
    }
  }
}

TEST_CASE("all-flat even blocks recover to themselves") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  BitArray u = sample_u(u_ell_length(ell), 8);
  for (std::uint64_t j = 0; j < gadget_count(ell); ++j)
    for (std::uint64_t i = 0; i < ell; ++i)
      u.set(2 * j * ell + i, (i % 2 == 0) ? 0 : 1);  // 0101...
  const auto recovered = recover_even_blocks(make_recovery_instance(ell, f, u));
  for (const BitArray& b : recovered) CHECK(b == repeat("01", ell / 2));
}

TEST_CASE("odd lg: the unrecoverable trailing even block is left out") {
  // ell = 32 has five blocks; block 4 is even-indexed but faces only
  // padding, so exactly the two gadget-indexed blocks come back.
  const std::uint64_t ell = 32;
  const BitArray f = build_f_ell(ell);
  const std::uint64_t m = u_ell_length(ell);
  for (int trial = 0; trial < 50; ++trial) {
    const BitArray u = sample_u(m, split_seed(63, trial));
    const auto recovered =
        recover_even_blocks(make_recovery_instance(ell, f, u));
    REQUIRE(recovered.size() == 2);
    CHECK(recovered[0] == u.slice(0, ell));
    CHECK(recovered[1] == u.slice(2 * ell, ell));
  }
}

TEST_CASE("odd-block contribution is independent of the even blocks") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const std::uint64_t m = u_ell_length(ell);
  const BitArray window = f.slice(0, m);

  const BitArray base = sample_u(m, 70);
  std::int64_t odd_sum_first = -1;
  for (int variant = 0; variant < 10; ++variant) {
    // Same odd blocks, fresh even blocks.
    BitArray u = sample_u(m, split_seed(71, variant));
    for (std::uint64_t b = 1; b < floor_log2(ell); b += 2)
      for (std::uint64_t i = 0; i < ell; ++i) u.set(b * ell + i, base[b * ell + i]);
    const auto profile = contribution_profile(window, u);
    std::int64_t odd_sum = 0;
    for (std::uint64_t b = 1; b < floor_log2(ell); b += 2)
      for (std::uint64_t i = 0; i < ell; ++i) odd_sum += profile[b * ell + i];
    if (odd_sum_first < 0) odd_sum_first = odd_sum;
    CHECK(odd_sum == odd_sum_first);
  }
}

TEST_CASE("decoder is deterministic") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const BitArray u = sample_u(u_ell_length(ell), 90);
  const RecoveryInstance inst = make_recovery_instance(ell, f, u);
  CHECK(recover_even_blocks(inst) == recover_even_blocks(inst));
}

TEST_CASE("tampered outputs fail loudly") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const BitArray u = sample_u(u_ell_length(ell), 91);
  RecoveryInstance inst = make_recovery_instance(ell, f, u);

  RecoveryInstance bumped = inst;
  bumped.outputs[1] = Distance::finite(bumped.outputs[1].value() + 1);
  CHECK_THROWS_AS(recover_even_blocks(bumped), DecodeFailureError);

  RecoveryInstance sunk = inst;
  sunk.outputs[0] = Distance::finite(0);
  CHECK_THROWS_AS(recover_even_blocks(sunk), CorruptInstanceError);

  RecoveryInstance infinite = inst;
  infinite.outputs[2] = Distance::infinite();
  CHECK_THROWS_AS(recover_even_blocks(infinite), CorruptInstanceError);
}

TEST_CASE("decode failures carry the offending offset") {
  const std::uint64_t ell = 16;
  const BitArray f = build_f_ell(ell);
  const BitArray u = sample_u(u_ell_length(ell), 92);
  RecoveryInstance inst = make_recovery_instance(ell, f, u);
  inst.outputs[2] = Distance::finite(inst.outputs[2].value() + 1);
  try {
    recover_even_blocks(inst);
    FAIL("expected a decode failure");
  } catch (const DecodeFailureError& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("entropy certificate: exhaustive sweep at ell = 16") {
  const CertificateReport r = entropy_certificate(16, 256, 1, 2);
  CHECK(r.trials == 256);
  CHECK(r.successes == 256);
  CHECK(r.distinct_configurations == 256);
  CHECK(r.certified_bits == 8);  // J * ell/4 = 2 * 4
  CHECK(r.failures.empty());
}

TEST_CASE("entropy certificate: trials beyond the space stay round-trips") {
  // The first 256 trials enumerate every configuration; the rest are
  // independent samples. All of them count.
  const CertificateReport r = entropy_certificate(16, 300, 1, 2);
  CHECK(r.trials == 300);
  CHECK(r.successes == 300);
  CHECK(r.distinct_configurations == 256);
  CHECK(r.certified_bits == 8);
}

TEST_CASE("entropy certificate: single trial certifies nothing beyond itself") {
  const CertificateReport r = entropy_certificate(16, 1, 2, 1);
  CHECK(r.trials == 1);
  CHECK(r.successes == 1);
  CHECK(r.certified_bits == 0);
}

TEST_CASE("entropy certificate: Monte-Carlo growth stays under the ceiling") {
  const CertificateReport r = entropy_certificate(64, 40, 3, 2);
  CHECK(r.successes == 40);
  CHECK(r.distinct_configurations <= 40);
  CHECK(r.certified_bits <= gadget_count(64) * (64 / 4));
  CHECK(r.certified_bits == floor_log2(r.distinct_configurations));
}

TEST_CASE("certificate reports are reproducible for a fixed seed") {
  const CertificateReport a = entropy_certificate(16, 50, 4, 2);
  const CertificateReport b = entropy_certificate(16, 50, 4, 1);
  CHECK(a.successes == b.successes);
  CHECK(a.distinct_configurations == b.distinct_configurations);
  CHECK(a.certified_bits == b.certified_bits);
}
