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
#include <string>
#include <vector>

#include "bitlab/bit_array.hpp"
#include "bitlab/distance.hpp"

namespace bitlab {

/// Decoder for the rearrangement experiment. Splitting the update array
/// U_ell (length ell*lg ell) into lg(ell) consecutive ell-length blocks,
/// the decoder is given the fixed subarray F_ell, the sliding outputs, and
/// the odd-indexed blocks only — and reconstructs every gadget-indexed
/// even block exactly.
///
/// Stage k works on outputs[k] (window offset 4k). A candidate update array
/// carrying the odd blocks, the already recovered frame suffixes, and 0101
/// in every still-unknown frame costs outputs[k] minus
/// sum_j v_j * 2^{j+1}, where v_j = 1 iff even block 2j's frame at offset k
/// is 1010: unknown frames in front of a gadget face 1001 padding and cost
/// exactly 2 whatever their content, while a frontier frame meets the
/// gadget anchor and costs v_j*2^{j+1} + 2^{2j} + 2. Subtracting the
/// candidate cost therefore isolates D*2 = sum_j v_j*2^{j+1}, in which
/// each v_j is a distinct binary digit.
///
/// When lg(ell) is odd the final block is even-indexed but faces only
/// padding; its frames cost 2 regardless of content, so it is not
/// recoverable and not returned.

struct RecoveryInstance {
  std::uint64_t ell = 0;
  BitArray f_ell;                    // length ell*lg(ell) + ell
  std::vector<Distance> outputs;     // ell/4 finite sliding outputs
  std::vector<BitArray> odd_blocks;  // blocks 2j+1, each length ell
};

struct DStar {
  std::int64_t value = 0;    // summed frontier-frame cost D*
  std::int64_t reduced = 0;  // D*2 = value - sum_j (2^{2j} + 2)
};

/// Assembles an instance from a full update array: computes the sliding
/// outputs and keeps only the odd blocks. Test/driver convenience; the
/// decoder itself never sees u_ell.
RecoveryInstance make_recovery_instance(std::uint64_t ell,
                                        const BitArray& f_ell,
                                        const BitArray& u_ell);

/// D* at output offset k. even_suffixes[j] must hold the already recovered
/// last 4k symbols of even block 2j (empty at k = 0). Throws
/// CorruptInstanceError when the outputs are inconsistent with the claimed
/// odd blocks.
DStar compute_dstar(const RecoveryInstance& inst, std::uint64_t k,
                    const std::vector<BitArray>& even_suffixes);

/// Reads v_j from bit j+1 of d.reduced for j in [block_count]; any residual
/// outside those bits is a loud DecodeFailureError, never truncated.
std::vector<std::uint8_t> extract_vbits(const DStar& d,
                                        std::uint64_t block_count);

/// Full reconstruction of the gadget-indexed even blocks (2j for
/// j in [floor(lg ell / 2)]), frame by frame from the right.
std::vector<BitArray> recover_even_blocks(const RecoveryInstance& inst);

struct CertificateFailure {
  std::uint64_t trial = 0;
  std::int64_t k = -1;
  std::int64_t j = -1;
  std::string detail;
};

struct CertificateReport {
  std::uint64_t ell = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t distinct_configurations = 0;
  std::uint64_t certified_bits = 0;
  std::vector<CertificateFailure> failures;
};

/// Demonstrates recoverability over many instances and reports
/// floor(lg(distinct even-block configurations recovered)) as a
/// constructive entropy certificate; ceiling is J*ell/4 bits. When the
/// trial budget covers the whole configuration space (and it is small
/// enough to enumerate), the sweep is exhaustive with the odd blocks
/// pinned from the seed; otherwise trials are independent Monte-Carlo
/// round-trips keyed by index. `threads` caps fan-out (0 = thread_cap()).
CertificateReport entropy_certificate(std::uint64_t ell, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads = 0);

/// Converts streamed outputs into the sliding outputs the decoder consumes.
/// `window` must be the engine window at the arrival where the update block
/// under recovery sits at offset 4k inside F_ell, `slice_start` that
/// window position; the streamed value minus the cost of moving everything
/// outside the slice equals the sliding output. Throws CorruptInstanceError
/// if the window is not frame-aligned (infinite or non-local matching).
std::int64_t strip_outside_contribution(const BitArray& pattern,
                                        const BitArray& window,
                                        std::int64_t streamed_value,
                                        std::uint64_t slice_start,
                                        std::uint64_t slice_len);

}  // namespace bitlab
