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

#ifndef EPRB_STATS_H
#define EPRB_STATS_H

#include <array>
#include <cstdint>

#include "eprb/angle.h"
#include "eprb/outcome.h"
#include "eprb/quantum.h"

namespace eprb {

/// Observed joint outcome counts, cell order ++, +-, -+, --.
struct CountTable {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }
  std::uint64_t operator[](std::size_t cell) const;
  std::uint64_t& operator[](std::size_t cell);
  std::array<std::uint64_t, 4> cells() const { return {n_pp, n_pm, n_mp, n_mm}; }

  void add(JointOutcome o) { ++(*this)[cell_index(o)]; }
  CountTable& operator+=(const CountTable& other);

  friend bool operator==(const CountTable&, const CountTable&) = default;
};

/// Frequencies n/N, tagged empirical. Throws std::invalid_argument if N = 0.
JointDistribution empirical_distribution(const CountTable& counts);

struct CorrelationEstimate {
  double value = 0.0;
  double std_error = 0.0;

  friend bool operator==(const CorrelationEstimate&, const CorrelationEstimate&) = default;
};

/// E_hat = (n_pp + n_mm - n_pm - n_mp)/N, std_error = sqrt((1 - E_hat^2)/N).
CorrelationEstimate empirical_correlation(const CountTable& counts);

/// Empirical frequency of "+" for one party.
double empirical_marginal_plus(const CountTable& counts, Party party);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a),
/// a > 0, x >= 0. Series for x < a + 1, Lentz continued fraction
/// otherwise, each iterated to 1e-15 relative.
double regularized_gamma_q(double a, double x);

/// Chi-square survival function P(X >= statistic) with `dof` degrees of
/// freedom. +infinity gives 0.
double chi_square_sf(double statistic, int dof);

struct GofResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;

  friend bool operator==(const GofResult&, const GofResult&) = default;
};

/// Pearson goodness-of-fit over cells with expected probability > 0.
/// Expected-0 cells contribute nothing when empty and make the statistic
/// +infinity (p = 0) when not. dof = (#cells with expected > 0) - 1;
/// with a single such cell the test is degenerate and p = 1 unless an
/// impossible cell was hit.
GofResult chi_square_gof(const CountTable& counts, const JointDistribution& expected);

/// Two-sample chi-square homogeneity test of two count tables over the
/// cells where at least one sample is nonzero; dof = (#such cells) - 1.
GofResult chi_square_two_sample(const CountTable& x, const CountTable& y);

struct ChshEstimate {
  double s_value = 0.0;
  double std_error = 0.0;
  std::array<Angle, 4> angles{};  // a, a', b, b'
};

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b'), errors added in quadrature.
/// Throws std::invalid_argument if any |E| > 1.
ChshEstimate chsh_value(CorrelationEstimate e_ab, CorrelationEstimate e_ab2,
                        CorrelationEstimate e_a2b, CorrelationEstimate e_a2b2,
                        std::array<Angle, 4> angles = {});

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for k successes in n trials at normal quantile z.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z);

}  // namespace eprb

#endif  // EPRB_STATS_H
