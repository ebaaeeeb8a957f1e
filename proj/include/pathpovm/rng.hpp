// Copyright 2026 The pathpovm Authors
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

#include <array>
#include <cstdint>
#include <string>

namespace pathpovm {

/// Counter-based generator (Philox 4x32, 10 rounds). Streams derived from
/// (seed, stream) are independent, so per-shot substreams reproduce exactly
/// regardless of execution order.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static std::string name() { return "philox4x32-10"; }

  /// Raw block function (exposed for known-answer tests).
  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 4> &counter,
      const std::array<std::uint32_t, 2> &key);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_ = 0;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;  // remaining 32-bit lanes in buffer_
};

}  // namespace pathpovm
