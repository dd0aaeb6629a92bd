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

#include "eprb/quantum.h"

#include <cmath>
#include <stdexcept>

namespace eprb {

std::array<double, 4> SingletAmplitudes::squared_magnitudes() const {
  return {std::norm(c_pp), std::norm(c_pm), std::norm(c_mp), std::norm(c_mm)};
}

double JointDistribution::operator[](std::size_t cell) const {
  switch (cell) {
    case 0: return p_pp;
    case 1: return p_pm;
    case 2: return p_mp;
    case 3: return p_mm;
  }
  throw std::out_of_range("joint distribution cell index");
}

bool JointDistribution::satisfies_invariants(double tolerance) const {
  for (double p : cells()) {
    if (!(p >= 0.0 && p <= 1.0)) return false;
  }
  if (std::abs(sum() - 1.0) > tolerance) return false;
  if (kind == Kind::theoretical) {
    return p_pp == p_mm && p_pm == p_mp;
  }
  return true;
}

SingletAmplitudes singlet_amplitudes(Angle theta, Angle phi) {
  const double half = difference(theta, phi).radians() / 2.0;
  const double s = std::sin(half) / std::numbers::sqrt2;
  const double c = std::cos(half) / std::numbers::sqrt2;
  const std::complex<double> minus_i_s{0.0, -s};
  return {minus_i_s, {c, 0.0}, {-c, 0.0}, minus_i_s};
}

JointDistribution joint_distribution(Angle theta, Angle phi) {
  const double c = std::cos(difference(theta, phi).radians());
  const double same = (1.0 - c) / 4.0;
  const double opposite = (1.0 + c) / 4.0;
  return {same, opposite, opposite, same, JointDistribution::Kind::theoretical};
}

double correlation(Angle theta, Angle phi) {
  return -std::cos(difference(theta, phi).radians());
}

double correlation_of(const JointDistribution& d) {
  return (d.p_pp + d.p_mm) - (d.p_pm + d.p_mp);
}

double marginal_of(const JointDistribution& d, Party party, Outcome outcome) {
  const bool plus = outcome == Outcome::plus;
  if (party == Party::first) {
    return plus ? d.p_pp + d.p_pm : d.p_mp + d.p_mm;
  }
  return plus ? d.p_pp + d.p_mp : d.p_pm + d.p_mm;
}

double marginal(Angle theta, Angle phi, Party party, Outcome outcome) {
  return marginal_of(joint_distribution(theta, phi), party, outcome);
}

double conditional(Angle theta, Angle phi, Outcome given_b, Outcome a) {
  const JointDistribution d = joint_distribution(theta, phi);
  const double pb = marginal_of(d, Party::second, given_b);
  if (pb <= 0.0) {
    throw std::domain_error("conditioning on an event of probability 0");
  }
  return d.probability({a, given_b}) / pb;
}

JointOutcome sample_cell(const JointDistribution& d, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    cumulative += d[i];
    if (u < cumulative) return cell_outcome(i);
  }
  // The last cell absorbs rounding slack, unless it is impossible.
  if (d.p_mm > 0.0) return cell_outcome(3);
  for (std::size_t i = 3; i-- > 0;) {
    if (d[i] > 0.0) return cell_outcome(i);
  }
  throw std::invalid_argument("sample_cell: distribution has no mass");
}

}  // namespace eprb
