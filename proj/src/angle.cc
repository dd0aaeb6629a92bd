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

#include "eprb/angle.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace eprb {

Angle Angle::from_radians(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value plus 2pi can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return Angle(r);
}

Angle normalize_angle(double x) { return Angle::from_radians(x); }

Angle difference(Angle theta, Angle phi) {
  return normalize_angle(theta.radians() - phi.radians());
}

namespace {

[[noreturn]] void malformed(std::string_view text) {
  throw std::invalid_argument("malformed angle '" + std::string(text) + "'");
}

double parse_number(std::string_view s, std::string_view whole) {
  if (s.empty() || s.front() == '-' || s.front() == '+') malformed(whole);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    malformed(whole);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Angle parse_angle(std::string_view text) {
  const std::string_view whole = text;
  std::string_view s = trim(text);
  if (s.empty()) malformed(whole);

  double sign = 1.0;
  if (s.front() == '+' || s.front() == '-') {
    if (s.front() == '-') sign = -1.0;
    s.remove_prefix(1);
  }

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) {
    return normalize_angle(sign * parse_number(s, whole));
  }

  std::string_view coeff = s.substr(0, pi_pos);
  std::string_view rest = s.substr(pi_pos + 2);

  double value = kPi;
  if (!coeff.empty()) {
    if (coeff.back() == '*') coeff.remove_suffix(1);
    value *= parse_number(coeff, whole);
  }
  if (!rest.empty()) {
    if (rest.front() != '/') malformed(whole);
    const double denom = parse_number(rest.substr(1), whole);
    if (denom == 0.0) malformed(whole);
    value /= denom;
  }
  return normalize_angle(sign * value);
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double overflow");
  return std::string(buf, ptr);
}

}  // namespace eprb
