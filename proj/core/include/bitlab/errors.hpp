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
#include <stdexcept>
#include <string>

namespace bitlab {

/// Interval arithmetic produced an index past the end of the stream
/// (t3 >= n). Signals that n is too small for the requested (ell, t),
/// not a programming error.
class GeometryOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force oracle refused an input beyond its factorial-scale guard.
class OracleScaleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No content-preserving permutation exists between the two strings
/// (unequal symbol counts), so per-position contributions are undefined.
class NoValidPermutationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fixed-array layout could not be realized (overlapping regions,
/// residual length, ...). Carries the residual/diagnostic in the message.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decoder inputs are mutually inconsistent (e.g. outputs cannot have come
/// from the claimed odd blocks).
class CorruptInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bit extraction failed; never silently truncated. `offset` is the output
/// offset k being decoded, `block` the gadget index j when known (-1 otherwise).
class DecodeFailureError : public std::runtime_error {
 public:
  DecodeFailureError(std::string what, std::int64_t offset, std::int64_t block)
      : std::runtime_error(std::move(what)), offset_(offset), block_(block) {}

  std::int64_t offset() const { return offset_; }
  std::int64_t block() const { return block_; }

 private:
  std::int64_t offset_;
  std::int64_t block_;
};

}  // namespace bitlab
