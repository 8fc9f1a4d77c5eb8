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
#include <vector>

#include "bitlab/bit_array.hpp"

namespace bitlab {

/// Rearrangement-side fixed array.
///
/// For a window length ell (power of two >= 16) the subarray F_ell has
/// length ell*lg(ell) + ell and decomposes into J = floor(lg(ell)/2)
/// regions of length 2*ell followed by a tail of 1001-repeats:
///
///     region j = (1001)^{ell/4 - 1}  gadget_j          (j = 0 .. J-1)
///     gadget_j = 1 0^{2^j + 2} 1^{ell/2 + 1} 0^{ell/2 - 2^j}
///
/// Each gadget has length ell + 4 and, like its region and the tail, an
/// equal number of ones and zeros. The gadget for index j starts at
/// position (2j+1)*ell - 4: its first one sits there, its first two zeros
/// right after, and its second one at relative position 3 + 2^j, which is
/// what makes frame costs of the aligned update blocks carry one
/// recoverable bit per gadget in a distinct binary digit.
///
/// Inside the full array F of length n, every subarray F_ell sits at
/// pattern_region_start(n, ell); everything outside the subarrays is
/// 01-repeats, so F, every F_ell and every prefix of F up to an F_ell
/// holds exactly as many ones as zeros.

constexpr std::uint64_t kMinGadgetEll = 16;
/// Leading zero run of gadget j is 2^j + kGadgetZeroRunBase.
constexpr std::uint64_t kGadgetZeroRunBase = 2;

struct BlockSpec {
  std::uint64_t ell = 0;
  std::uint64_t j = 0;
  std::uint64_t zero_run = 0;  // 2^j + kGadgetZeroRunBase
};

struct RegionLayout {
  std::uint64_t ell = 0;
  std::uint64_t start = 0;
  std::uint64_t len = 0;
};

/// A generated experiment input: fixed array plus sampled update array.
struct HardInstance {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  BitArray pattern;  // F, length n
  BitArray updates;  // U, length n
  std::vector<RegionLayout> layout;
};

/// Number of gadget blocks in F_ell.
std::uint64_t gadget_count(std::uint64_t ell);

/// Throws std::invalid_argument unless ell is a power of two >= 16
/// divisible by 4.
void require_gadget_ell(std::uint64_t ell);

BlockSpec block_spec(std::uint64_t ell, std::uint64_t j);

/// The gadget block for index j; length ell + 4, equal ones and zeros,
/// second one at relative position 3 + 2^j.
BitArray build_block(std::uint64_t ell, std::uint64_t j);

/// The full subarray F_ell, length ell*lg(ell) + ell. Validates length,
/// balance and gadget positions at build time.
BitArray build_f_ell(std::uint64_t ell);

/// The rearrangement-side fixed array F for stream length n, with the
/// realized layout. Requires every element of lengths_set(n) to be a
/// power of two >= 16.
BitArray build_f(std::uint64_t n, std::vector<RegionLayout>* layout_out);

/// len/4 independent blocks, each 0101 or 1010 with probability 1/2;
/// deterministic in the seed. len must be divisible by 4.
BitArray sample_u(std::uint64_t len, std::uint64_t seed);

/// Uniform bits; the update distribution of the convolution experiment.
BitArray sample_bits(std::uint64_t len, std::uint64_t seed);

/// build_f + sample_u in one instance.
HardInstance make_l2_instance(std::uint64_t n, std::uint64_t seed);

/// Update-array length aligned with F_ell: ell * lg(ell).
std::uint64_t u_ell_length(std::uint64_t ell);

}  // namespace bitlab
