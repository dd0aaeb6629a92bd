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

#ifndef EPRB_OUTCOME_H
#define EPRB_OUTCOME_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace eprb {

/// Spin up (+1) or down (-1) along the local magnet axis.
enum class Outcome : std::int8_t { plus = 1, minus = -1 };

constexpr int value(Outcome o) { return static_cast<int>(o); }

constexpr Outcome flip(Outcome o) { return o == Outcome::plus ? Outcome::minus : Outcome::plus; }

/// "+" or U+2212 MINUS SIGN.
std::string_view symbol(Outcome o);

/// "+" or "-".
constexpr char ascii_symbol(Outcome o) { return o == Outcome::plus ? '+' : '-'; }

/// Outcomes of particle 1 (a) and particle 2 (b).
struct JointOutcome {
  Outcome a = Outcome::plus;
  Outcome b = Outcome::plus;

  friend constexpr bool operator==(JointOutcome, JointOutcome) = default;
};

/// Cell order used everywhere: ++, +-, -+, --.
constexpr std::size_t cell_index(JointOutcome o) {
  return (o.a == Outcome::plus ? 0 : 2) + (o.b == Outcome::plus ? 0 : 1);
}

constexpr JointOutcome cell_outcome(std::size_t index) {
  return {index < 2 ? Outcome::plus : Outcome::minus,
          index % 2 == 0 ? Outcome::plus : Outcome::minus};
}

inline constexpr std::array<JointOutcome, 4> kAllJointOutcomes = {
    cell_outcome(0), cell_outcome(1), cell_outcome(2), cell_outcome(3)};

/// Compact form, e.g. "+−".
std::string compact(JointOutcome o);

}  // namespace eprb

#endif  // EPRB_OUTCOME_H
