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

namespace bitlab {

/// Interval/gap arithmetic for the lop-sided two-interval experiment layout.
///
/// For a stream length n (power of two, >= 2^16) the admissible window
/// lengths are
///
///     L = { floor(n^{1/4}) * (lg n)^{2i} : i = 0 .. floor(lg n / (4*floor(lg lg n))) }.
///
/// Every division and every non-integer power is floored; the flooring sites
/// are exactly: n^{1/4} (integer fourth root), lg lg n, and the index bound.
/// The i = 0 element is floor(n^{1/4}) and the largest element never exceeds
/// n^{3/4}.
///
/// For ell in L and a start arrival t, the four arrival indices
///
///     t0 = t
///     t1 = t0 + ell*lg(ell) - 1     (first interval  [t0, t1], length ell*lg ell)
///     t2 = t1 + gap_len + 1         (gap             [t1+1, t2-1], length gap_len)
///     t3 = t2 + ell - 1             (second interval [t2, t3], length ell)
///
/// with gap_len = floor(4*ell / lg n). For adjacent lengths ell < ell' the
/// whole ell-span t3 - t0 + 1 fits inside the ell' gap; validate_nesting
/// reports the margins instead of assuming them.

constexpr std::uint64_t kMinStreamLength = std::uint64_t{1} << 16;

struct LengthSet {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> lengths;  // strictly increasing
};

struct IntervalSpec {
  std::uint64_t ell = 0;
  std::uint64_t t = 0;
  std::uint64_t t0 = 0;
  std::uint64_t t1 = 0;
  std::uint64_t t2 = 0;
  std::uint64_t t3 = 0;
  std::uint64_t gap_len = 0;
};

/// Arrivals f, f+ell, f+2*ell, ... up to n/2 for one offset f of the
/// evenly spread arrival grid.
struct OffsetGrid {
  std::uint64_t ell = 0;
  std::uint64_t f = 0;
  std::vector<std::uint64_t> arrivals;
};

struct NestingPair {
  std::uint64_t ell = 0;
  std::uint64_t ell_next = 0;
  std::uint64_t span = 0;      // t3 - t0 + 1 for ell (t-independent)
  std::uint64_t gap_next = 0;  // gap_len for ell_next
  std::int64_t margin = 0;     // gap_next - span
  bool pass = false;
};

struct NestingReport {
  std::vector<NestingPair> pairs;
  bool all_pass = true;
};

/// Throws std::invalid_argument unless n is a power of two >= 2^16.
void require_supported_n(std::uint64_t n);

std::uint64_t gap_length(std::uint64_t n, std::uint64_t ell);

/// t3 - t0 + 1; independent of t.
std::uint64_t interval_span(std::uint64_t n, std::uint64_t ell);

/// Exponent-based variants for stream lengths up to 2^64, whose value
/// does not fit in a uint64 even though every derived quantity does.
/// lg_n must lie in [16, 64].
std::vector<std::uint64_t> lengths_for_log2(unsigned lg_n);
std::uint64_t gap_length_log2(unsigned lg_n, std::uint64_t ell);
std::uint64_t interval_span_log2(unsigned lg_n, std::uint64_t ell);
NestingReport nesting_report_log2(unsigned lg_n);

/// Largest t for which the whole span stays inside [0, n-1]. May be smaller
/// than n/2 - 1 at desk scale; interval_spec surfaces that as
/// GeometryOverflowError rather than clamping.
std::uint64_t max_admissible_start(std::uint64_t n, std::uint64_t ell);

LengthSet lengths_set(std::uint64_t n);

/// Requires ell in lengths_set(n) and 0 <= t <= n/2 - 1. Throws
/// GeometryOverflowError when t3 would reach past n - 1.
IntervalSpec interval_spec(std::uint64_t n, std::uint64_t ell, std::uint64_t t);

/// The offsets { i * gap_len : i in [floor(lg n / 4)] }, all < ell,
/// consecutive spacing exactly gap_len.
std::vector<std::uint64_t> offset_set(std::uint64_t n, std::uint64_t ell);

/// Arrival grid for one offset; arrivals run up to and including n/2.
OffsetGrid arrival_grid(std::uint64_t n, std::uint64_t ell, std::uint64_t f);

NestingReport validate_nesting(std::uint64_t n);

/// Nesting margins for an explicit length list (ascending). Lets callers
/// check hypothetical sets; validate_nesting(n) uses lengths_set(n).
NestingReport nesting_report_for_lengths(unsigned lg_n,
                                         const std::vector<std::uint64_t>& lengths);

/// Start index of the ell-subarray inside a fixed pattern of length n:
/// start = n - gap_len - ell*(lg ell + 1). Shared by both pattern kinds;
/// their lengths differ by one, so the trailing distance is gap_len + 1
/// positions counted inclusively from the right end.
std::uint64_t pattern_region_start(std::uint64_t n, std::uint64_t ell);

}  // namespace bitlab
