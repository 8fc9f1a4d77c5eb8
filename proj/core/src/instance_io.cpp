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

#include "bitlab/instance_io.hpp"

#include <json.hpp>

#include <algorithm>

#include "bitlab/util.hpp"

namespace bitlab {

using nlohmann::ordered_json;

std::string bits_to_base64(const BitArray& bits) {
  return base64_encode(bits.to_packed());
}

BitArray bits_from_base64(const std::string& text) {
  return BitArray::from_packed(base64_decode(text));
}

std::string instance_to_json(const HardInstance& inst) {
  ordered_json j;
  j["n"] = inst.n;
  j["seed"] = inst.seed;
  std::vector<std::uint64_t> ells;
  ordered_json layout = ordered_json::array();
  for (const RegionLayout& r : inst.layout) {
    ells.push_back(r.ell);
    layout.push_back({{"ell", r.ell}, {"start", r.start}, {"len", r.len}});
  }
  std::sort(ells.begin(), ells.end());
  j["ells"] = ells;
  j["F"] = bits_to_base64(inst.pattern);
  j["U"] = bits_to_base64(inst.updates);
  j["layout"] = layout;
  return j.dump(2) + "\n";
}

HardInstance instance_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  HardInstance inst;
  inst.n = j.at("n").get<std::uint64_t>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.pattern = bits_from_base64(j.at("F").get<std::string>());
  inst.updates = bits_from_base64(j.at("U").get<std::string>());
  for (const auto& r : j.at("layout")) {
    inst.layout.push_back(RegionLayout{r.at("ell").get<std::uint64_t>(),
                                       r.at("start").get<std::uint64_t>(),
                                       r.at("len").get<std::uint64_t>()});
  }
  if (inst.pattern.size() != inst.n || inst.updates.size() != inst.n)
    throw std::invalid_argument("instance: array lengths disagree with n");
  return inst;
}

}  // namespace bitlab
