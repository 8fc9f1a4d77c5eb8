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

#include "bitlab/recovery.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bitlab/errors.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/util.hpp"

namespace bitlab {

namespace {

bool is_update_block_shaped(const BitArray& b) {
  if (b.size() % 4 != 0) return false;
  for (std::size_t i = 0; i + 4 <= b.size(); i += 4) {
    const bool flat = b[i] == 0 && b[i + 1] == 1 && b[i + 2] == 0 && b[i + 3] == 1;
    const bool flip = b[i] == 1 && b[i + 1] == 0 && b[i + 2] == 1 && b[i + 3] == 0;
    if (!flat && !flip) return false;
  }
  return true;
}

void validate_instance(const RecoveryInstance& inst) {
  require_gadget_ell(inst.ell);
  const std::uint64_t ell = inst.ell;
  const std::uint64_t m = u_ell_length(ell);
  if (inst.f_ell.size() != m + ell)
    throw std::invalid_argument("recovery: subarray length mismatch");
  if (inst.outputs.size() != ell / 4)
    throw std::invalid_argument("recovery: expected ell/4 outputs");
  for (const Distance& d : inst.outputs)
    if (!d.is_finite())
      throw CorruptInstanceError("recovery: outputs must all be finite");
  const std::uint64_t blocks = floor_log2(ell);
  if (inst.odd_blocks.size() != blocks / 2)
    throw std::invalid_argument("recovery: wrong number of odd blocks");
  for (const BitArray& b : inst.odd_blocks) {
    if (b.size() != ell)
      throw std::invalid_argument("recovery: odd block length mismatch");
    if (!is_update_block_shaped(b))
      throw std::invalid_argument("recovery: odd block outside {0101,1010}^*");
  }
}

// Candidate update array for stage k: odd blocks as claimed, recovered
// suffixes in place, 0101 in every frame not yet known. Its cost against
// window k differs from the true cost by exactly sum_j v_j * 2^{j+1}.
BitArray stage_candidate(const RecoveryInstance& inst, std::uint64_t k,
                         const std::vector<BitArray>& even_suffixes) {
  const std::uint64_t ell = inst.ell;
  const std::uint64_t blocks = floor_log2(ell);
  const std::uint64_t gadgets = gadget_count(ell);
  BitArray cand;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (b % 2 == 1) {
      cand.append(inst.odd_blocks[b / 2]);
      continue;
    }
    const std::uint64_t j = b / 2;
    BitArray block = repeat("01", ell / 2);
    if (j < gadgets) {
      const BitArray& suffix = even_suffixes[j];
      if (suffix.size() != 4 * k)
        throw std::invalid_argument("recovery: suffix length must be 4k");
      for (std::uint64_t i = 0; i < suffix.size(); ++i)
        block.set(ell - suffix.size() + i, suffix[i]);
    }
    cand.append(block);
  }
  return cand;
}

}  // namespace

RecoveryInstance make_recovery_instance(std::uint64_t ell,
                                        const BitArray& f_ell,
                                        const BitArray& u_ell) {
  require_gadget_ell(ell);
  if (u_ell.size() != u_ell_length(ell))
    throw std::invalid_argument("update array length must be ell*lg(ell)");
  RecoveryInstance inst;
  inst.ell = ell;
  inst.f_ell = f_ell;
  inst.outputs = slide_l2(f_ell, u_ell);
  const std::uint64_t blocks = floor_log2(ell);
  for (std::uint64_t b = 1; b < blocks; b += 2)
    inst.odd_blocks.push_back(u_ell.slice(b * ell, ell));
  return inst;
}

DStar compute_dstar(const RecoveryInstance& inst, std::uint64_t k,
                    const std::vector<BitArray>& even_suffixes) {
  validate_instance(inst);
  const std::uint64_t ell = inst.ell;
  if (k >= ell / 4) throw std::invalid_argument("output offset out of range");
  const std::uint64_t gadgets = gadget_count(ell);
  if (even_suffixes.size() != gadgets)
    throw std::invalid_argument("recovery: need one suffix per gadget");

  const std::uint64_t m = u_ell_length(ell);
  const BitArray window = inst.f_ell.slice(4 * k, m);
  const BitArray cand = stage_candidate(inst, k, even_suffixes);
  const Distance base = l2_rearrangement(window, cand);
  if (!base.is_finite())
    throw CorruptInstanceError("recovery: candidate distance infinite");

  DStar d;
  d.reduced = inst.outputs[k].value() - base.value();
  if (d.reduced < 0)
    throw CorruptInstanceError(
        "recovery: output below the known contributions at offset " +
        std::to_string(k));
  std::int64_t anchor_sum = 0;
  for (std::uint64_t j = 0; j < gadgets; ++j)
    anchor_sum += (std::int64_t{1} << (2 * j)) + 2;
  d.value = d.reduced + anchor_sum;
  return d;
}

std::vector<std::uint8_t> extract_vbits(const DStar& d,
                                        std::uint64_t block_count) {
  if (d.reduced < 0)
    throw DecodeFailureError("negative reduced value", -1, -1);
  const std::uint64_t reduced = static_cast<std::uint64_t>(d.reduced);
  std::vector<std::uint8_t> v(block_count, 0);
  std::uint64_t reconstructed = 0;
  for (std::uint64_t j = 0; j < block_count; ++j) {
    v[j] = static_cast<std::uint8_t>((reduced >> (j + 1)) & 1u);
    reconstructed |= std::uint64_t(v[j]) << (j + 1);
  }
  if (reconstructed != reduced)
    throw DecodeFailureError(
        "reduced value " + std::to_string(reduced) +
            " has bits outside the extractable range [1, " +
            std::to_string(block_count) + "]",
        -1, -1);
  return v;
}

std::vector<BitArray> recover_even_blocks(const RecoveryInstance& inst) {
  validate_instance(inst);
  const std::uint64_t ell = inst.ell;
  const std::uint64_t gadgets = gadget_count(ell);

  std::vector<BitArray> suffixes(gadgets);
  for (std::uint64_t k = 0; k < ell / 4; ++k) {
    const DStar d = compute_dstar(inst, k, suffixes);
    std::vector<std::uint8_t> v;
    try {
      v = extract_vbits(d, gadgets);
    } catch (const DecodeFailureError& e) {
      throw DecodeFailureError(std::string(e.what()) + " (at offset k = " +
                                   std::to_string(k) + ")",
                               static_cast<std::int64_t>(k), e.block());
    }
    for (std::uint64_t j = 0; j < gadgets; ++j) {
      BitArray frame = BitArray::from_string(v[j] ? "1010" : "0101");
      frame.append(suffixes[j]);
      suffixes[j] = std::move(frame);
    }
  }
  return suffixes;
}

CertificateReport entropy_certificate(std::uint64_t ell, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads) {
  require_gadget_ell(ell);
  const std::uint64_t gadgets = gadget_count(ell);
  const std::uint64_t config_bits = gadgets * (ell / 4);
  const BitArray f_ell = build_f_ell(ell);
  const std::uint64_t m = u_ell_length(ell);

  // When the budget covers the whole even-block configuration space, the
  // first 2^config_bits trials enumerate it exhaustively (odd blocks pinned
  // from the seed); every further trial is an independent sampled
  // round-trip. Each trial counts toward `trials` either way.
  const bool exhaustive_cover =
      config_bits <= 24 && trials >= (std::uint64_t{1} << config_bits);
  const std::uint64_t space =
      config_bits <= 24 ? (std::uint64_t{1} << config_bits) : 0;

  CertificateReport report;
  report.ell = ell;
  report.trials = trials;

  // Pinned content for blocks the exhaustive sweep does not vary.
  const BitArray pinned = sample_u(m, split_seed(seed, 0));

  struct TrialOutcome {
    bool success = false;
    std::string key;  // packed even-block configuration
    std::vector<CertificateFailure> failures;
  };

  auto run_trial = [&](std::uint64_t index) {
    TrialOutcome out;
    const bool enumerated = exhaustive_cover && index < space;
    BitArray u = enumerated ? pinned : sample_u(m, split_seed(seed, index + 1));
    if (enumerated) {
      // Config bit j*(ell/4) + w drives frame w of even block 2j.
      for (std::uint64_t j = 0; j < gadgets; ++j)
        for (std::uint64_t w = 0; w < ell / 4; ++w) {
          const bool flip = (index >> (j * (ell / 4) + w)) & 1u;
          const std::uint64_t base = 2 * j * ell + 4 * w;
          u.set(base + 0, flip ? 1 : 0);
          u.set(base + 1, flip ? 0 : 1);
          u.set(base + 2, flip ? 1 : 0);
          u.set(base + 3, flip ? 0 : 1);
        }
    }
    const RecoveryInstance inst = make_recovery_instance(ell, f_ell, u);
    std::vector<BitArray> recovered;
    try {
      recovered = recover_even_blocks(inst);
    } catch (const DecodeFailureError& e) {
      out.failures.push_back(
          CertificateFailure{index, e.offset(), e.block(), e.what()});
      return out;
    } catch (const CorruptInstanceError& e) {
      out.failures.push_back(CertificateFailure{index, -1, -1, e.what()});
      return out;
    }
    bool match = true;
    std::string key;
    key.reserve(gadgets * ell);
    for (std::uint64_t j = 0; j < gadgets; ++j) {
      const BitArray truth = u.slice(2 * j * ell, ell);
      if (recovered[j] != truth) match = false;
      key += truth.to_string();
    }
    if (!match) {
      out.failures.push_back(
          CertificateFailure{index, -1, -1, "recovered blocks differ from ground truth"});
      return out;
    }
    out.success = true;
    out.key = std::move(key);
    return out;
  };

  const std::uint64_t count = report.trials;
  std::vector<TrialOutcome> outcomes(count);
  const unsigned fanout = threads == 0 ? thread_cap() : threads;
  parallel_for_chunks(count, fanout, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) outcomes[i] = run_trial(i);
  });

  std::set<std::string> distinct;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (outcomes[i].success) {
      ++report.successes;
      distinct.insert(outcomes[i].key);
    }
    for (auto& f : outcomes[i].failures) report.failures.push_back(f);
  }
  report.distinct_configurations = distinct.size();
  report.certified_bits =
      distinct.size() <= 1 ? 0 : floor_log2(distinct.size());
  return report;
}

std::int64_t strip_outside_contribution(const BitArray& pattern,
                                        const BitArray& window,
                                        std::int64_t streamed_value,
                                        std::uint64_t slice_start,
                                        std::uint64_t slice_len) {
  std::vector<std::int64_t> profile;
  try {
    profile = contribution_profile(pattern, window);
  } catch (const NoValidPermutationError&) {
    throw CorruptInstanceError(
        "stream adapter: window has no valid rearrangement");
  }
  // The subtraction equals the slice-local distance only when the matching
  // never crosses the slice boundaries, i.e. the ones-counts of pattern and
  // window agree on the prefix before the slice and up to its end.
  auto prefix_ones = [](const BitArray& a, std::uint64_t end) {
    std::uint64_t c = 0;
    for (std::uint64_t p = 0; p < end; ++p) c += a[p];
    return c;
  };
  for (std::uint64_t boundary : {slice_start, slice_start + slice_len})
    if (prefix_ones(pattern, boundary) != prefix_ones(window, boundary))
      throw CorruptInstanceError(
          "stream adapter: matching crosses the slice boundary at " +
          std::to_string(boundary));
  std::int64_t outside = 0;
  for (std::uint64_t p = 0; p < profile.size(); ++p)
    if (p < slice_start || p >= slice_start + slice_len) outside += profile[p];
  return streamed_value - outside;
}

}  // namespace bitlab
