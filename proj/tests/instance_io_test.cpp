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
#include <json.hpp>

#include "bitlab/bit_array.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/instance_io.hpp"
#include "bitlab/util.hpp"

using namespace bitlab;

TEST_CASE("bit array text form") {
  const BitArray a = BitArray::from_string("10010");
  CHECK(a.to_string() == "10010");
  CHECK(a.size() == 5);
  CHECK(a.count_ones() == 2);
  CHECK_THROWS_AS(BitArray::from_string("10x"), std::invalid_argument);
}

TEST_CASE("packed form round-trips across lengths") {
  // Length header plus little-endian bit packing; lengths straddling byte
  // boundaries are the interesting cases.
  SplitMix64 rng(14);
  for (std::uint64_t len : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{7},
                            std::uint64_t{8}, std::uint64_t{9}, std::uint64_t{64},
                            std::uint64_t{65}, std::uint64_t{1000}}) {
    BitArray a(len);
    for (std::uint64_t i = 0; i < len; ++i) a.set(i, rng.next_bit());
    const auto packed = a.to_packed();
    CHECK(packed.size() == 8 + (len + 7) / 8);
    CHECK(BitArray::from_packed(packed) == a);
    CHECK(bits_from_base64(bits_to_base64(a)) == a);
  }
}

TEST_CASE("packed form bit order is little-endian") {
  const BitArray a = BitArray::from_string("10000001");
  const auto packed = a.to_packed();
  CHECK(packed[0] == 8);  // length header, low byte first
  CHECK(packed[8] == 0x81);
}

TEST_CASE("instance JSON carries the exact schema") {
  const HardInstance inst = make_l2_instance(std::uint64_t{1} << 16, 12);
  const std::string text = instance_to_json(inst);
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.contains("n"));
  REQUIRE(j.contains("seed"));
  REQUIRE(j.contains("ells"));
  REQUIRE(j.contains("F"));
  REQUIRE(j.contains("U"));
  REQUIRE(j.contains("layout"));
  CHECK(j["n"] == 65536);
  CHECK(j["seed"] == 12);
  CHECK(j["ells"] == nlohmann::json::array({16, 4096}));
  CHECK(j["F"].is_string());
  CHECK(j["U"].is_string());
  for (const auto& r : j["layout"]) {
    CHECK(r.contains("ell"));
    CHECK(r.contains("start"));
    CHECK(r.contains("len"));
  }

  const HardInstance back = instance_from_json(text);
  CHECK(back.n == inst.n);
  CHECK(back.seed == inst.seed);
  CHECK(back.pattern == inst.pattern);
  CHECK(back.updates == inst.updates);
  CHECK(back.layout.size() == inst.layout.size());
}

TEST_CASE("instance JSON rejects inconsistent payloads") {
  const HardInstance inst = make_l2_instance(std::uint64_t{1} << 16, 12);
  auto j = nlohmann::json::parse(instance_to_json(inst));
  j["n"] = 1024;  // arrays no longer match
  CHECK_THROWS_AS(instance_from_json(j.dump()), std::invalid_argument);
}
