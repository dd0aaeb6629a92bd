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

#ifndef EPRB_ANGLE_H
#define EPRB_ANGLE_H

#include <numbers>
#include <string>
#include <string_view>

namespace eprb {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A magnet orientation in radians, always held in [0, 2pi).
///
/// Two angles compare equal only when their normalized values are
/// bit-identical. Angles that should denote the same context must be
/// produced from the same input.
class Angle {
 public:
  constexpr Angle() = default;

  /// Throws std::invalid_argument for NaN or infinite input.
  static Angle from_radians(double x);

  constexpr double radians() const { return radians_; }

  friend constexpr bool operator==(Angle, Angle) = default;
  friend constexpr auto operator<=>(Angle, Angle) = default;

 private:
  explicit constexpr Angle(double r) : radians_(r) {}
  double radians_ = 0.0;
};

Angle normalize_angle(double x);

/// normalize(theta - phi).
Angle difference(Angle theta, Angle phi);

/// Parses the angle grammar shared by the CLI and contexts files:
///
///   angle   := ['+'|'-'] ( number | [number ['*']] 'pi' ['/' number] )
///
/// e.g. "0", "0.75", "pi", "-pi/2", "3pi/4", "2*pi/3", "1.5pi".
/// Throws std::invalid_argument with the offending text on error.
Angle parse_angle(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace eprb

#endif  // EPRB_ANGLE_H
