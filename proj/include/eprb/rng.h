// Copyright 2026 The eprb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPRB_RNG_H
#define EPRB_RNG_H

#include <cstdint>
#include <string_view>

namespace eprb {

/// SplitMix64 (Steele, Lea, Flood 2014), written out so streams are
/// bit-identical on every platform:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Sub-streams are keyed with derive_key(), so a stream for (seed, i, j)
/// exists without having generated any other stream first. That is what
/// makes results independent of how work is split across threads.
class SplitMix64 {
 public:
  static constexpr std::string_view kGeneratorId = "splitmix64";
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// The index-th output of a SplitMix64 stream started at `key`
/// (index 0 is the first output): mix(key + gamma * (index + 1)).
constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) {
  return SplitMix64::mix(key + SplitMix64::kGamma * (index + 1));
}

constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t i, std::uint64_t j) {
  return derive_key(derive_key(key, i), j);
}

}  // namespace eprb

#endif  // EPRB_RNG_H
