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
#include <span>
#include <stdexcept>
#include <vector>

#include "bitlab/bit_array.hpp"

namespace bitlab {

/// A rearrangement distance: a non-negative 64-bit value or the distinguished
/// infinite element. Infinite is a variant, never an integer sentinel, since
/// finite values have no a-priori ceiling small enough to spare one.
class Distance {
 public:
  static constexpr Distance infinite() { return Distance(false, 0); }
  static constexpr Distance finite(std::int64_t v) { return Distance(true, v); }

  constexpr bool is_finite() const { return finite_; }
  constexpr std::int64_t value() const {
    if (!finite_) throw std::logic_error("Distance: value() on infinite");
    return value_;
  }

  friend constexpr bool operator==(const Distance&, const Distance&) = default;

 private:
  constexpr Distance(bool finite, std::int64_t v) : finite_(finite), value_(v) {}
  bool finite_;
  std::int64_t value_;
};

/// Inputs longer than this could overflow the 64-bit sum of squared
/// displacements (bound: len * (len-1)^2 < 2^63). Checked, not assumed.
constexpr std::size_t kMaxExactLength = std::size_t{1} << 21;

/// Exact sum of pointwise products; lengths must match.
std::int64_t inner_product(const BitArray& a, const BitArray& b);

/// Integer windowing core: out[i] = sum_j f[i+j] * u[j]. Kept generic over
/// integer vectors so linearity can be tested on the core itself.
std::vector<std::int64_t> slide_inner_products(std::span<const std::int64_t> f,
                                               std::span<const std::int64_t> u);

/// Inner products of u against every window of f (f.size() >= u.size());
/// output length f.size() - u.size() + 1.
std::vector<std::int64_t> slide_conv(const BitArray& f, const BitArray& u);

/// Minimum over content-preserving permutations pi of sum |j - pi(j)|^2,
/// infinite when the ones-counts differ. Computed in linear time via the
/// matching rule: the k-th one (zero) of one string pairs with the k-th
/// one (zero) of the other.
Distance l2_rearrangement(const BitArray& a, const BitArray& b);

/// Definitional oracle: minimizes over all valid permutations by
/// enumeration. Refuses lengths > 10 (OracleScaleError).
Distance l2_bruteforce(const BitArray& a, const BitArray& b);

/// Per-position squared displacement of b's symbols under the matching-rule
/// optimal permutation (b's k-th one moves to a's k-th one, same for zeros).
/// The profile sums to l2_rearrangement(a, b). Throws
/// NoValidPermutationError when the distance is infinite.
std::vector<std::int64_t> contribution_profile(const BitArray& a,
                                               const BitArray& b);

/// Rearrangement distances of u against every fourth window of f.
/// Requires f.size() = u.size() + ell with ell divisible by 4 and
/// u.size() = ell * lg(ell); output has ell/4 entries, entry i for the
/// window starting at 4i.
std::vector<Distance> slide_l2(const BitArray& f, const BitArray& u);

}  // namespace bitlab
