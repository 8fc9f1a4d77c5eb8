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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bitlab/bit_array.hpp"
#include "bitlab/hard_instance.hpp"

namespace bitlab {

/// (0,1)-Toeplitz matrices, exact output entropy of Mv over uniform random
/// v, empirical search for high-entropy witnesses, and the embedding of a
/// matrix into a convolution pattern.
///
/// Index convention for the embedding (fixed here, property-tested, never
/// re-derived per call): the diagonal profile d, d[c - r] = M[r][c], is laid
/// out as  F[p] = d[p - (h-1)]  for p in [0, h + w - 1), i.e. first column
/// bottom-to-top then first row tail. Then sliding inner products traverse
/// the matrix rows in reverse:
///
///     slide_conv(F, v)[i] == toeplitz_apply(M, v)[h - 1 - i].

struct ToeplitzSpec {
  std::uint64_t height = 0;
  std::uint64_t width = 0;
  BitArray first_row;  // length width
  BitArray first_col;  // length height; first_col[0] == first_row[0]
};

/// Builds a spec from dimensions and a diagonal string laid out as
/// first_col followed by first_row[1..] (the canonical search key).
ToeplitzSpec toeplitz_from_key(std::uint64_t h, std::uint64_t w,
                               std::uint64_t key);

enum class EntropyMethod { exhaustive, sampled };

struct EntropyResult {
  ToeplitzSpec matrix;
  double entropy_bits = 0.0;
  std::uint64_t distinct_outputs = 0;
  EntropyMethod method = EntropyMethod::exhaustive;
  std::optional<std::uint64_t> sample_size;
};

enum class SearchStrategy { exhaustive, random, greedy };

struct SearchResult {
  std::optional<EntropyResult> best;
  double gamma = 0.0;  // entropy / (h * lg h)
  double alpha = 0.0;  // width / (h * lg h)
  bool partial = false;
  std::uint64_t evaluated = 0;
  std::uint64_t best_key = 0;  // canonical diagonal key of `best`
};

/// Exact integer matrix-vector product; v.size() must equal width.
std::vector<std::int64_t> toeplitz_apply(const ToeplitzSpec& m,
                                         const BitArray& v);

/// An input width beyond this would need more than 2^24 enumerated inputs;
/// exact_entropy refuses it, sampled_entropy takes over.
constexpr std::uint64_t kExhaustiveWidthCap = 24;

/// Shannon entropy of Mv in bits, from the exact output distribution over
/// all 2^width inputs (Gray-code enumeration, exact counts).
EntropyResult exact_entropy(const ToeplitzSpec& m);

/// Plug-in estimate from `samples` draws (raised to 2^20 if lower); biased
/// low, flagged by method = sampled.
EntropyResult sampled_entropy(const ToeplitzSpec& m, std::uint64_t samples,
                              std::uint64_t seed);

/// Best entropy over candidate diagonal strings. budget caps entropy
/// evaluations; ties break to the lexicographically smallest canonical
/// key. exhaustive requires h + width - 1 <= 24 free diagonal bits.
SearchResult search_witnesses(std::uint64_t h, std::uint64_t width,
                              std::uint64_t budget, std::uint64_t seed,
                              SearchStrategy strategy);

/// Extends m (height h) to width h*lg(h) with zero-filled extra diagonals
/// and returns the pattern F of length h + h*lg(h) - 1 realizing the
/// documented sliding convention.
BitArray embed_conv_pattern(const ToeplitzSpec& m);

/// Convolution-side fixed array: each supplied matrix embedded at the
/// shared region start for its ell, filler bits zero.
BitArray build_conv_f(std::uint64_t n,
                      const std::map<std::uint64_t, ToeplitzSpec>& per_ell,
                      std::vector<RegionLayout>* layout_out);

/// The per-ell matrices a seeded convolution instance embeds, regenerable
/// independently of the instance bytes (the second route of the embedding
/// check).
std::map<std::uint64_t, ToeplitzSpec> conv_matrices(std::uint64_t n,
                                                    std::uint64_t seed);

/// Seeded convolution instance: per-ell matrices with random diagonals,
/// uniform random updates.
HardInstance make_conv_instance(std::uint64_t n, std::uint64_t seed);

/// The canonical diagonal string (first_col then first_row) as lowercase
/// hex, bits packed most-significant first.
std::string diagonal_string_hex(const ToeplitzSpec& m);

/// One CSV line matching: h,width,strategy,seed,budget,entropy_bits,gamma,
/// alpha,diagonal_string_hex (header included). Deterministic bytes.
std::string search_result_csv(const SearchResult& r, std::uint64_t h,
                              std::uint64_t width, SearchStrategy strategy,
                              std::uint64_t seed, std::uint64_t budget);

}  // namespace bitlab
