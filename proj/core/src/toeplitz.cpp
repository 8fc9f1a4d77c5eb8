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

#include "bitlab/toeplitz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "bitlab/distance.hpp"
#include "bitlab/errors.hpp"
#include "bitlab/geometry.hpp"
#include "bitlab/util.hpp"

namespace bitlab {

namespace {

void validate_spec(const ToeplitzSpec& m) {
  if (m.height == 0 || m.width == 0)
    throw std::invalid_argument("toeplitz: empty dimensions");
  if (m.first_row.size() != m.width || m.first_col.size() != m.height)
    throw std::invalid_argument("toeplitz: profile lengths do not match dimensions");
  if (m.first_row[0] != m.first_col[0])
    throw std::invalid_argument("toeplitz: first row and column disagree at (0,0)");
}

// Diagonal profile: diag[c - r + h - 1] = M[r][c].
std::vector<std::uint8_t> diagonal_profile(const ToeplitzSpec& m) {
  std::vector<std::uint8_t> d(m.height + m.width - 1, 0);
  for (std::uint64_t i = 0; i < m.height; ++i)
    d[m.height - 1 - i] = m.first_col[i];
  for (std::uint64_t i = 0; i < m.width; ++i) d[m.height - 1 + i] = m.first_row[i];
  return d;
}

double entropy_from_counts(std::vector<std::uint64_t> counts,
                           long double total_lg, std::uint64_t total) {
  // H = lg(total) - (sum c*lg c) / total, exact counts. Counts are summed in
  // sorted order so the floating result is independent of tally order.
  std::sort(counts.begin(), counts.end());
  long double acc = 0.0L;
  for (std::uint64_t c : counts)
    if (c > 1) acc += static_cast<long double>(c) * std::log2l(static_cast<long double>(c));
  long double h = total_lg - acc / static_cast<long double>(total);
  if (h < 0.0L) h = 0.0L;
  return static_cast<double>(h);
}

// Output tally able to hold either packed 64-bit keys (small h) or raw
// byte keys (general case).
class OutputTally {
 public:
  OutputTally(std::uint64_t height, std::uint64_t width)
      : height_(height),
        bits_per_entry_(static_cast<std::uint64_t>(std::bit_width(width))),
        packed_(height * bits_per_entry_ <= 64) {}

  void add(const std::vector<std::int32_t>& out) {
    if (packed_) {
      std::uint64_t key = 0;
      for (std::uint64_t r = 0; r < height_; ++r)
        key |= std::uint64_t(static_cast<std::uint32_t>(out[r]))
               << (r * bits_per_entry_);
      ++packed_counts_[key];
    } else {
      std::string key(reinterpret_cast<const char*>(out.data()),
                      out.size() * sizeof(std::int32_t));
      ++byte_counts_[key];
    }
  }

  std::vector<std::uint64_t> counts() const {
    std::vector<std::uint64_t> c;
    c.reserve(packed_ ? packed_counts_.size() : byte_counts_.size());
    if (packed_)
      for (const auto& [k, v] : packed_counts_) c.push_back(v);
    else
      for (const auto& [k, v] : byte_counts_) c.push_back(v);
    return c;
  }

  std::uint64_t distinct() const {
    return packed_ ? packed_counts_.size() : byte_counts_.size();
  }

 private:
  std::uint64_t height_;
  std::uint64_t bits_per_entry_;
  bool packed_;
  std::unordered_map<std::uint64_t, std::uint64_t> packed_counts_;
  std::map<std::string, std::uint64_t> byte_counts_;
};

double h_lg_h(std::uint64_t h) {
  return static_cast<double>(h) * std::log2(static_cast<double>(h));
}

bool better_candidate(double entropy, std::uint64_t key, double best_entropy,
                      std::uint64_t best_key, bool have_best) {
  if (!have_best) return true;
  if (entropy != best_entropy) return entropy > best_entropy;
  return key < best_key;  // lexicographic tie-break on the canonical key
}

}  // namespace

ToeplitzSpec toeplitz_from_key(std::uint64_t h, std::uint64_t w,
                               std::uint64_t key) {
  const std::uint64_t free_bits = h + w - 1;
  if (free_bits > 64)
    throw std::invalid_argument("toeplitz key form limited to 64 diagonal bits");
  ToeplitzSpec m;
  m.height = h;
  m.width = w;
  // Key bits are the canonical string first_col[0..h-1], first_row[1..w-1],
  // most significant bit first.
  auto bit_at = [&](std::uint64_t pos) {
    return static_cast<std::uint8_t>((key >> (free_bits - 1 - pos)) & 1u);
  };
  m.first_col = BitArray(h);
  for (std::uint64_t i = 0; i < h; ++i) m.first_col.set(i, bit_at(i));
  m.first_row = BitArray(w);
  m.first_row.set(0, m.first_col[0]);
  for (std::uint64_t i = 1; i < w; ++i) m.first_row.set(i, bit_at(h + i - 1));
  return m;
}

std::vector<std::int64_t> toeplitz_apply(const ToeplitzSpec& m,
                                         const BitArray& v) {
  validate_spec(m);
  if (v.size() != m.width)
    throw std::invalid_argument("toeplitz: vector length must equal width");
  const std::vector<std::uint8_t> d = diagonal_profile(m);
  std::vector<std::int64_t> out(m.height, 0);
  for (std::uint64_t r = 0; r < m.height; ++r) {
    std::int64_t acc = 0;
    for (std::uint64_t c = 0; c < m.width; ++c)
      acc += static_cast<std::int64_t>(d[c - r + m.height - 1] & v[c]);
    out[r] = acc;
  }
  return out;
}

EntropyResult exact_entropy(const ToeplitzSpec& m) {
  validate_spec(m);
  if (m.width > kExhaustiveWidthCap)
    throw std::invalid_argument(
        "exact entropy refused beyond width 24; use sampled_entropy");
  const std::vector<std::uint8_t> d = diagonal_profile(m);
  const std::uint64_t h = m.height, w = m.width;
  const std::uint64_t total = std::uint64_t{1} << w;

  OutputTally tally(h, w);
  std::vector<std::int32_t> out(h, 0);
  tally.add(out);  // v = 0
  // Gray-code walk: step i flips input bit countr_zero(i).
  for (std::uint64_t i = 1; i < total; ++i) {
    const int c = std::countr_zero(i);
    const std::uint64_t gray = i ^ (i >> 1);
    const std::int32_t sign = ((gray >> c) & 1u) ? 1 : -1;
    for (std::uint64_t r = 0; r < h; ++r)
      out[r] += sign * static_cast<std::int32_t>(
                           d[static_cast<std::uint64_t>(c) - r + h - 1]);
    tally.add(out);
  }

  EntropyResult res;
  res.matrix = m;
  res.distinct_outputs = tally.distinct();
  res.entropy_bits = entropy_from_counts(tally.counts(),
                                         static_cast<long double>(w), total);
  res.method = EntropyMethod::exhaustive;
  return res;
}

EntropyResult sampled_entropy(const ToeplitzSpec& m, std::uint64_t samples,
                              std::uint64_t seed) {
  validate_spec(m);
  const std::uint64_t n_samples = std::max<std::uint64_t>(samples, std::uint64_t{1} << 20);
  const std::vector<std::uint8_t> d = diagonal_profile(m);
  const std::uint64_t h = m.height, w = m.width;

  OutputTally tally(h, w);
  SplitMix64 rng(seed);
  std::vector<std::int32_t> out(h);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    std::fill(out.begin(), out.end(), 0);
    for (std::uint64_t c = 0; c < w; ++c) {
      if (rng.next_bit()) {
        for (std::uint64_t r = 0; r < h; ++r)
          out[r] += static_cast<std::int32_t>(d[c - r + h - 1]);
      }
    }
    tally.add(out);
  }

  EntropyResult res;
  res.matrix = m;
  res.distinct_outputs = tally.distinct();
  res.entropy_bits = entropy_from_counts(
      tally.counts(), std::log2l(static_cast<long double>(n_samples)),
      n_samples);
  res.method = EntropyMethod::sampled;
  res.sample_size = n_samples;
  return res;
}

SearchResult search_witnesses(std::uint64_t h, std::uint64_t width,
                              std::uint64_t budget, std::uint64_t seed,
                              SearchStrategy strategy) {
  if (h < 2) throw std::invalid_argument("search needs h >= 2");
  if (width == 0) throw std::invalid_argument("search needs width >= 1");
  const std::uint64_t free_bits = h + width - 1;
  if (strategy == SearchStrategy::exhaustive && free_bits > 24)
    throw std::invalid_argument(
        "exhaustive search limited to h + width - 1 <= 24 diagonal bits");
  if (free_bits > 64)
    throw std::invalid_argument("search limited to 64 diagonal bits");
  const std::uint64_t mask =
      free_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << free_bits) - 1;

  SearchResult result;
  double best_entropy = 0.0;

  // Evaluates one candidate, updates the running best, returns its entropy.
  auto evaluate = [&](std::uint64_t key) {
    const ToeplitzSpec m = toeplitz_from_key(h, width, key);
    const EntropyResult er =
        width <= kExhaustiveWidthCap
            ? exact_entropy(m)
            : sampled_entropy(m, std::uint64_t{1} << 20, split_seed(seed, key));
    ++result.evaluated;
    if (better_candidate(er.entropy_bits, key, best_entropy, result.best_key,
                         result.best.has_value())) {
      result.best = er;
      result.best_key = key;
      best_entropy = er.entropy_bits;
    }
    return er.entropy_bits;
  };

  if (strategy == SearchStrategy::exhaustive) {
    const std::uint64_t space = std::uint64_t{1} << free_bits;
    for (std::uint64_t key = 0; key < space && result.evaluated < budget; ++key)
      evaluate(key);
    result.partial = result.evaluated < space;
  } else if (strategy == SearchStrategy::random) {
    for (std::uint64_t i = 0; i < budget; ++i)
      evaluate(split_seed(seed, i) & mask);
    result.partial = budget == 0;
  } else if (budget == 0) {
    result.partial = true;
  } else {
    // Greedy hill climb: move to the best strictly improving single-bit
    // flip until a local maximum or the budget runs out.
    std::uint64_t current = split_seed(seed, 0) & mask;
    double current_entropy = evaluate(current);
    bool out_of_budget = false;
    while (!out_of_budget) {
      std::uint64_t best_flip = current;
      double best_flip_entropy = current_entropy;
      for (std::uint64_t b = 0; b < free_bits; ++b) {
        if (result.evaluated >= budget) {
          out_of_budget = true;
          break;
        }
        const std::uint64_t cand = current ^ (std::uint64_t{1} << b);
        const double e = evaluate(cand);
        if (e > best_flip_entropy ||
            (e == best_flip_entropy && best_flip != current && cand < best_flip)) {
          best_flip = cand;
          best_flip_entropy = e;
        }
      }
      if (best_flip == current) break;  // local maximum
      current = best_flip;
      current_entropy = best_flip_entropy;
    }
    result.partial = out_of_budget;
  }

  if (result.best) {
    result.gamma = result.best->entropy_bits / h_lg_h(h);
    result.alpha = static_cast<double>(width) / h_lg_h(h);
  }
  return result;
}

BitArray embed_conv_pattern(const ToeplitzSpec& m) {
  validate_spec(m);
  if (m.height < 2)
    throw std::invalid_argument("embedding needs height >= 2");
  const std::uint64_t h = m.height;
  const std::uint64_t full_width = h * floor_log2(h);
  if (m.width > full_width)
    throw std::invalid_argument("matrix wider than h*lg(h)");
  BitArray f(h + full_width - 1);
  // F[p] = d[p - (h-1)]: first column bottom-to-top, then the row; extra
  // diagonals beyond the given width are zero-filled.
  for (std::uint64_t i = 0; i < h; ++i) f.set(h - 1 - i, m.first_col[i]);
  for (std::uint64_t i = 1; i < m.width; ++i) f.set(h - 1 + i, m.first_row[i]);
  return f;
}

BitArray build_conv_f(std::uint64_t n,
                      const std::map<std::uint64_t, ToeplitzSpec>& per_ell,
                      std::vector<RegionLayout>* layout_out) {
  const LengthSet ls = lengths_set(n);
  std::vector<RegionLayout> layout;
  for (std::uint64_t ell : ls.lengths) {
    require_gadget_ell(ell);
    if (!per_ell.count(ell))
      throw std::invalid_argument("missing matrix for ell = " + std::to_string(ell));
    layout.push_back(RegionLayout{ell, pattern_region_start(n, ell),
                                  u_ell_length(ell) + ell - 1});
  }
  std::sort(layout.begin(), layout.end(),
            [](const RegionLayout& a, const RegionLayout& b) {
              return a.start < b.start;
            });
  for (std::size_t i = 0; i + 1 < layout.size(); ++i)
    if (layout[i].start + layout[i].len > layout[i + 1].start)
      throw ConstructionError("embedded regions overlap");
  if (layout.back().start + layout.back().len > n)
    throw ConstructionError("embedded region reaches past the array end");

  BitArray f(n);  // filler stays zero
  for (const RegionLayout& r : layout) {
    const ToeplitzSpec& m = per_ell.at(r.ell);
    if (m.height != r.ell)
      throw std::invalid_argument("matrix height must equal its ell");
    const BitArray sub = embed_conv_pattern(m);
    if (sub.size() != r.len)
      throw ConstructionError("embedded subarray length mismatch");
    for (std::uint64_t i = 0; i < sub.size(); ++i) f.set(r.start + i, sub[i]);
  }
  if (layout_out) *layout_out = layout;
  return f;
}

std::map<std::uint64_t, ToeplitzSpec> conv_matrices(std::uint64_t n,
                                                    std::uint64_t seed) {
  const LengthSet ls = lengths_set(n);
  std::map<std::uint64_t, ToeplitzSpec> mats;
  for (std::uint64_t ell : ls.lengths) {
    SplitMix64 rng(split_seed(seed, ell));
    ToeplitzSpec m;
    m.height = ell;
    m.width = u_ell_length(ell);
    m.first_col = BitArray(m.height);
    for (std::uint64_t i = 0; i < m.height; ++i) m.first_col.set(i, rng.next_bit());
    m.first_row = BitArray(m.width);
    m.first_row.set(0, m.first_col[0]);
    for (std::uint64_t i = 1; i < m.width; ++i) m.first_row.set(i, rng.next_bit());
    mats.emplace(ell, std::move(m));
  }
  return mats;
}

HardInstance make_conv_instance(std::uint64_t n, std::uint64_t seed) {
  HardInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.pattern = build_conv_f(n, conv_matrices(n, seed), &inst.layout);
  inst.updates = sample_bits(n, split_seed(seed, 0x75706474ULL));  // updates
  return inst;
}

std::string diagonal_string_hex(const ToeplitzSpec& m) {
  std::string bits = m.first_col.to_string() + m.first_row.to_string();
  std::string hex;
  hex.reserve((bits.size() + 3) / 4);
  // MSB-first nibbles, zero-padded on the right.
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      v <<= 1;
      if (i + k < bits.size() && bits[i + k] == '1') v |= 1;
    }
    hex.push_back("0123456789abcdef"[v]);
  }
  return hex;
}

namespace {
const char* strategy_name(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::exhaustive:
      return "exhaustive";
    case SearchStrategy::random:
      return "random";
    case SearchStrategy::greedy:
      return "greedy";
  }
  return "?";
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}
}  // namespace

std::string search_result_csv(const SearchResult& r, std::uint64_t h,
                              std::uint64_t width, SearchStrategy strategy,
                              std::uint64_t seed, std::uint64_t budget) {
  std::string csv =
      "h,width,strategy,seed,budget,entropy_bits,gamma,alpha,diagonal_string_hex\n";
  csv += std::to_string(h) + "," + std::to_string(width) + "," +
         strategy_name(strategy) + "," + std::to_string(seed) + "," +
         std::to_string(budget) + ",";
  if (r.best) {
    csv += fmt_double(r.best->entropy_bits) + "," + fmt_double(r.gamma) + "," +
           fmt_double(r.alpha) + "," + diagonal_string_hex(r.best->matrix);
  } else {
    csv += ",,,";
  }
  csv += "\n";
  return csv;
}

}  // namespace bitlab
