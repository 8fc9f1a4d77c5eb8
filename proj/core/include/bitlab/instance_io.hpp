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

#include <string>

#include "bitlab/bit_array.hpp"
#include "bitlab/hard_instance.hpp"

namespace bitlab {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Base64 of the packed little-endian form (8-byte length header + bits).
std::string bits_to_base64(const BitArray& bits);
BitArray bits_from_base64(const std::string& text);

/// Instance JSON:
///   { "n": int, "seed": int, "ells": [int], "F": base64, "U": base64,
///     "layout": [{"ell": int, "start": int, "len": int}] }
std::string instance_to_json(const HardInstance& inst);
HardInstance instance_from_json(const std::string& text);

}  // namespace bitlab
