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

#ifndef EPRB_QUANTUM_H
#define EPRB_QUANTUM_H

#include <array>
#include <complex>

#include "eprb/angle.h"
#include "eprb/outcome.h"

namespace eprb {

/// Tolerance for analytic identities in double precision.
inline constexpr double kAnalyticTolerance = 1e-12;

/// Singlet amplitudes in the product basis |theta,+-> (x) |phi,+->.
///
/// Phase convention, with d = normalize(theta - phi):
///   c_pp = c_mm = -(i / sqrt2) sin(d/2)
///   c_pm =       +(1 / sqrt2) cos(d/2)
///   c_mp =       -(1 / sqrt2) cos(d/2)
/// Only the squared magnitudes are observable.
struct SingletAmplitudes {
  std::complex<double> c_pp;
  std::complex<double> c_pm;
  std::complex<double> c_mp;
  std::complex<double> c_mm;

  std::array<double, 4> squared_magnitudes() const;
};

/// Four joint outcome probabilities in cell order ++, +-, -+, --.
///
/// Theoretical instances obey the singlet symmetries (p_pp == p_mm,
/// p_pm == p_mp); empirical ones are only required to be normalized.
struct JointDistribution {
  enum class Kind { theoretical, empirical };

  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;
  Kind kind = Kind::theoretical;

  double operator[](std::size_t cell) const;
  double probability(JointOutcome o) const { return (*this)[cell_index(o)]; }
  std::array<double, 4> cells() const { return {p_pp, p_pm, p_mp, p_mm}; }
  double sum() const { return p_pp + p_pm + p_mp + p_mm; }

  /// Range and normalization for every instance; symmetry for
  /// theoretical ones. Tolerance applies to the sum.
  bool satisfies_invariants(double tolerance = kAnalyticTolerance) const;

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;
};

SingletAmplitudes singlet_amplitudes(Angle theta, Angle phi);

/// p_pp = p_mm = (1 - cos d)/4, p_pm = p_mp = (1 + cos d)/4
/// (the same as half sin^2(d/2) and half cos^2(d/2)).
JointDistribution joint_distribution(Angle theta, Angle phi);

/// -cos(theta - phi).
double correlation(Angle theta, Angle phi);

/// E = p_pp + p_mm - p_pm - p_mp for any distribution.
double correlation_of(const JointDistribution& d);

enum class Party { first = 1, second = 2 };

/// Single-party probability; 1/2 for every input.
double marginal(Angle theta, Angle phi, Party party, Outcome outcome);

double marginal_of(const JointDistribution& d, Party party, Outcome outcome);

/// P(A = a | B = given_b, theta, phi). Throws std::domain_error if the
/// conditioning event has probability 0.
double conditional(Angle theta, Angle phi, Outcome given_b, Outcome a);

/// Inverse-CDF draw over cells in order ++, +-, -+, --; u in [0, 1).
/// Cells of probability 0 are never returned.
JointOutcome sample_cell(const JointDistribution& d, double u);

}  // namespace eprb

#endif  // EPRB_QUANTUM_H
