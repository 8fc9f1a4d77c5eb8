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

#include "bitlab/distance.hpp"

#include <algorithm>
#include <numeric>

#include "bitlab/errors.hpp"
#include "bitlab/util.hpp"

namespace bitlab {

namespace {

void require_equal_lengths(const BitArray& a, const BitArray& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("lengths must match");
}

void require_exact_range(std::size_t len) {
  if (len > kMaxExactLength)
    throw std::overflow_error(
        "input longer than the exact 64-bit arithmetic guard");
}

// Matching-rule distance over raw spans; pairs the k-th one of a with the
// k-th one of b and likewise for zeros. Two pointer sweeps per symbol, no
// allocation.
Distance l2_span(std::span<const std::uint8_t> a,
                 std::span<const std::uint8_t> b) {
  require_exact_range(a.size());
  std::int64_t acc = 0;
  for (int symbol = 0; symbol <= 1; ++symbol) {
    std::size_t pa = 0, pb = 0;
    const std::size_t n = a.size();
    for (;;) {
      while (pa < n && a[pa] != symbol) ++pa;
      while (pb < n && b[pb] != symbol) ++pb;
      const bool ea = pa == n, eb = pb == n;
      if (ea != eb) return Distance::infinite();
      if (ea) break;
      const std::int64_t d =
          static_cast<std::int64_t>(pa) - static_cast<std::int64_t>(pb);
      acc += d * d;
      ++pa;
      ++pb;
    }
  }
  return Distance::finite(acc);
}

}  // namespace

std::int64_t inner_product(const BitArray& a, const BitArray& b) {
  require_equal_lengths(a, b);
  const auto sa = a.bits();
  const auto sb = b.bits();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < sa.size(); ++i)
    acc += static_cast<std::int64_t>(sa[i] & sb[i]);
  return acc;
}

std::vector<std::int64_t> slide_inner_products(std::span<const std::int64_t> f,
                                               std::span<const std::int64_t> u) {
  if (f.size() < u.size())
    throw std::invalid_argument("window longer than the array it slides over");
  const std::size_t windows = f.size() - u.size() + 1;
  std::vector<std::int64_t> out(windows, 0);
  for (std::size_t i = 0; i < windows; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < u.size(); ++j) acc += f[i + j] * u[j];
    out[i] = acc;
  }
  return out;
}

std::vector<std::int64_t> slide_conv(const BitArray& f, const BitArray& u) {
  if (f.size() < u.size())
    throw std::invalid_argument("window longer than the array it slides over");
  const auto sf = f.bits();
  const auto su = u.bits();
  const std::size_t windows = f.size() - u.size() + 1;
  std::vector<std::int64_t> out(windows, 0);
  for (std::size_t i = 0; i < windows; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < su.size(); ++j)
      acc += static_cast<std::int64_t>(sf[i + j] & su[j]);
    out[i] = acc;
  }
  return out;
}

Distance l2_rearrangement(const BitArray& a, const BitArray& b) {
  require_equal_lengths(a, b);
  return l2_span(a.bits(), b.bits());
}

Distance l2_bruteforce(const BitArray& a, const BitArray& b) {
  require_equal_lengths(a, b);
  if (a.size() > 10)
    throw OracleScaleError("brute-force oracle refuses lengths > 10");

  // A valid permutation maps b's one-positions onto a's one-positions
  // bijectively and independently does the same for zeros, so the minimum
  // splits into two independent assignment minima, each enumerated fully.
  auto positions = [](const BitArray& s, std::uint8_t symbol) {
    std::vector<std::int64_t> p;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] == symbol) p.push_back(static_cast<std::int64_t>(i));
    return p;
  };

  std::int64_t total = 0;
  for (int symbol = 0; symbol <= 1; ++symbol) {
    std::vector<std::int64_t> pa = positions(a, static_cast<std::uint8_t>(symbol));
    std::vector<std::int64_t> pb = positions(b, static_cast<std::uint8_t>(symbol));
    if (pa.size() != pb.size()) return Distance::infinite();
    if (pa.empty()) continue;
    std::sort(pa.begin(), pa.end());
    std::int64_t best = INT64_MAX;
    do {
      std::int64_t cost = 0;
      for (std::size_t k = 0; k < pa.size(); ++k) {
        const std::int64_t d = pb[k] - pa[k];
        cost += d * d;
      }
      best = std::min(best, cost);
    } while (std::next_permutation(pa.begin(), pa.end()));
    total += best;
  }
  return Distance::finite(total);
}

std::vector<std::int64_t> contribution_profile(const BitArray& a,
                                               const BitArray& b) {
  require_equal_lengths(a, b);
  require_exact_range(a.size());
  if (a.count_ones() != b.count_ones())
    throw NoValidPermutationError(
        "contribution profile undefined: unequal ones-counts");

  std::vector<std::int64_t> profile(b.size(), 0);
  const auto sa = a.bits();
  const auto sb = b.bits();
  for (int symbol = 0; symbol <= 1; ++symbol) {
    std::size_t pa = 0, pb = 0;
    const std::size_t n = sa.size();
    for (;;) {
      while (pa < n && sa[pa] != symbol) ++pa;
      while (pb < n && sb[pb] != symbol) ++pb;
      if (pb == n) break;
      const std::int64_t d =
          static_cast<std::int64_t>(pb) - static_cast<std::int64_t>(pa);
      profile[pb] = d * d;
      ++pa;
      ++pb;
    }
  }
  return profile;
}

std::vector<Distance> slide_l2(const BitArray& f, const BitArray& u) {
  if (f.size() <= u.size())
    throw std::invalid_argument("sliding window layout: need f longer than u");
  const std::size_t ell = f.size() - u.size();
  if (ell % 4 != 0)
    throw std::invalid_argument("sliding window layout: ell must be divisible by 4");
  if (u.size() != ell * floor_log2(ell))
    throw std::invalid_argument("sliding window layout: u length must be ell*lg(ell)");

  const auto sf = f.bits();
  const auto su = u.bits();
  std::vector<Distance> out;
  out.reserve(ell / 4);
  for (std::size_t i = 0; 4 * i < ell; ++i)
    out.push_back(l2_span(sf.subspan(4 * i, su.size()), su));
  return out;
}

}  // namespace bitlab
