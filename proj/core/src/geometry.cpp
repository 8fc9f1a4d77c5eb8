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

#include "bitlab/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bitlab/errors.hpp"
#include "bitlab/util.hpp"

namespace bitlab {

namespace {

void require_supported_log2(unsigned lg_n) {
  if (lg_n < 16 || lg_n > 64)
    throw std::invalid_argument("lg(n) must lie in [16, 64]");
}

// floor(2^{lg_n / 4}): exact when 4 | lg_n, else the floored fourth root.
std::uint64_t fourth_root_log2(unsigned lg_n) {
  std::uint64_t r = std::uint64_t{1} << (lg_n / 4);
  switch (lg_n % 4) {
    case 0:
      return r;
    case 1:
      return static_cast<std::uint64_t>(
          std::floor(static_cast<double>(r) * std::pow(2.0, 0.25)));
    case 2:
      return static_cast<std::uint64_t>(
          std::floor(static_cast<double>(r) * std::sqrt(2.0)));
    default:
      return static_cast<std::uint64_t>(
          std::floor(static_cast<double>(r) * std::pow(2.0, 0.75)));
  }
}

bool contains(const std::vector<std::uint64_t>& v, std::uint64_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

void require_supported_n(std::uint64_t n) {
  if (!std::has_single_bit(n))
    throw std::invalid_argument("n must be a power of two");
  if (n < kMinStreamLength)
    throw std::invalid_argument("n below the minimum supported 2^16");
}

std::uint64_t gap_length_log2(unsigned lg_n, std::uint64_t ell) {
  require_supported_log2(lg_n);
  return 4 * ell / lg_n;
}

std::uint64_t interval_span_log2(unsigned lg_n, std::uint64_t ell) {
  return ell * floor_log2(ell) + gap_length_log2(lg_n, ell) + ell;
}

std::uint64_t gap_length(std::uint64_t n, std::uint64_t ell) {
  require_supported_n(n);
  return gap_length_log2(static_cast<unsigned>(floor_log2(n)), ell);
}

std::uint64_t interval_span(std::uint64_t n, std::uint64_t ell) {
  require_supported_n(n);
  return interval_span_log2(static_cast<unsigned>(floor_log2(n)), ell);
}

std::uint64_t max_admissible_start(std::uint64_t n, std::uint64_t ell) {
  const std::uint64_t span = interval_span(n, ell);
  const std::uint64_t cap = n / 2 - 1;
  if (span > n) return 0;  // not reachable for supported n, ell
  return std::min(cap, n - span);
}

std::vector<std::uint64_t> lengths_for_log2(unsigned lg_n) {
  require_supported_log2(lg_n);
  const std::uint64_t k = lg_n;             // lg n, exact
  const std::uint64_t lg_lg = floor_log2(k);  // lg lg n, floored
  const std::uint64_t i_max = k / (4 * lg_lg);  // index bound, floored
  const std::uint64_t base = fourth_root_log2(lg_n);

  std::vector<std::uint64_t> lengths;
  std::uint64_t power = 1;  // (lg n)^{2i}
  for (std::uint64_t i = 0; i <= i_max; ++i) {
    lengths.push_back(base * power);
    power *= k * k;
  }
  return lengths;
}

LengthSet lengths_set(std::uint64_t n) {
  require_supported_n(n);
  LengthSet out;
  out.n = n;
  out.lengths = lengths_for_log2(static_cast<unsigned>(floor_log2(n)));
  return out;
}

IntervalSpec interval_spec(std::uint64_t n, std::uint64_t ell, std::uint64_t t) {
  const LengthSet ls = lengths_set(n);
  if (!contains(ls.lengths, ell))
    throw std::invalid_argument("ell not in lengths_set(n)");
  if (t > n / 2 - 1)
    throw std::invalid_argument("t out of range [0, n/2 - 1]");

  IntervalSpec s;
  s.ell = ell;
  s.t = t;
  s.gap_len = gap_length(n, ell);
  s.t0 = t;
  s.t1 = s.t0 + ell * floor_log2(ell) - 1;
  s.t2 = s.t1 + s.gap_len + 1;
  s.t3 = s.t2 + ell - 1;
  if (s.t3 >= n)
    throw GeometryOverflowError(
        "interval reaches past the stream: t3 = " + std::to_string(s.t3) +
        " >= n = " + std::to_string(n) + " (ell = " + std::to_string(ell) +
        ", t = " + std::to_string(t) + "); largest admissible t is " +
        std::to_string(max_admissible_start(n, ell)));
  return s;
}

std::vector<std::uint64_t> offset_set(std::uint64_t n, std::uint64_t ell) {
  const LengthSet ls = lengths_set(n);
  if (!contains(ls.lengths, ell))
    throw std::invalid_argument("ell not in lengths_set(n)");
  const std::uint64_t gap = gap_length(n, ell);
  const std::uint64_t count = floor_log2(n) / 4;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(i * gap);
  return out;
}

OffsetGrid arrival_grid(std::uint64_t n, std::uint64_t ell, std::uint64_t f) {
  if (f >= ell) throw std::invalid_argument("offset f must be < ell");
  OffsetGrid g;
  g.ell = ell;
  g.f = f;
  for (std::uint64_t t = f; t <= n / 2; t += ell) g.arrivals.push_back(t);
  return g;
}

NestingReport nesting_report_for_lengths(
    unsigned lg_n, const std::vector<std::uint64_t>& lengths) {
  NestingReport r;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    NestingPair p;
    p.ell = lengths[i];
    p.ell_next = lengths[i + 1];
    p.span = interval_span_log2(lg_n, p.ell);
    p.gap_next = gap_length_log2(lg_n, p.ell_next);
    p.margin = static_cast<std::int64_t>(p.gap_next) -
               static_cast<std::int64_t>(p.span);
    p.pass = p.margin >= 0;
    r.all_pass = r.all_pass && p.pass;
    r.pairs.push_back(p);
  }
  return r;
}

NestingReport nesting_report_log2(unsigned lg_n) {
  return nesting_report_for_lengths(lg_n, lengths_for_log2(lg_n));
}

NestingReport validate_nesting(std::uint64_t n) {
  require_supported_n(n);
  return nesting_report_log2(static_cast<unsigned>(floor_log2(n)));
}

std::uint64_t pattern_region_start(std::uint64_t n, std::uint64_t ell) {
  const std::uint64_t len = ell * (floor_log2(ell) + 1);
  const std::uint64_t tail = gap_length(n, ell);
  if (len + tail > n)
    throw ConstructionError("pattern region does not fit: ell = " +
                            std::to_string(ell) + ", n = " + std::to_string(n));
  return n - tail - len;
}

}  // namespace bitlab
