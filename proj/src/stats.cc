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

#include "eprb/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eprb {

std::uint64_t CountTable::operator[](std::size_t cell) const {
  switch (cell) {
    case 0: return n_pp;
    case 1: return n_pm;
    case 2: return n_mp;
    case 3: return n_mm;
  }
  throw std::out_of_range("count table cell index");
}

std::uint64_t& CountTable::operator[](std::size_t cell) {
  switch (cell) {
    case 0: return n_pp;
    case 1: return n_pm;
    case 2: return n_mp;
    case 3: return n_mm;
  }
  throw std::out_of_range("count table cell index");
}

CountTable& CountTable::operator+=(const CountTable& other) {
  n_pp += other.n_pp;
  n_pm += other.n_pm;
  n_mp += other.n_mp;
  n_mm += other.n_mm;
  return *this;
}

namespace {

double require_total(const CountTable& counts) {
  const std::uint64_t n = counts.total();
  if (n == 0) throw std::invalid_argument("count table is empty (N = 0)");
  return static_cast<double>(n);
}

}  // namespace

JointDistribution empirical_distribution(const CountTable& counts) {
  const double n = require_total(counts);
  return {static_cast<double>(counts.n_pp) / n, static_cast<double>(counts.n_pm) / n,
          static_cast<double>(counts.n_mp) / n, static_cast<double>(counts.n_mm) / n,
          JointDistribution::Kind::empirical};
}

CorrelationEstimate empirical_correlation(const CountTable& counts) {
  const double n = require_total(counts);
  const auto same = static_cast<double>(counts.n_pp + counts.n_mm);
  const auto opposite = static_cast<double>(counts.n_pm + counts.n_mp);
  const double e = (same - opposite) / n;
  return {e, std::sqrt(std::max(0.0, 1.0 - e * e) / n)};
}

double empirical_marginal_plus(const CountTable& counts, Party party) {
  const double n = require_total(counts);
  const std::uint64_t plus =
      party == Party::first ? counts.n_pp + counts.n_pm : counts.n_pp + counts.n_mp;
  return static_cast<double>(plus) / n;
}

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kRelEps = 1e-15;

// P(a, x) by the power series, valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kRelEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction, valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kRelEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kRelEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || std::isnan(x) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_square_sf(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_sf: dof must be >= 1");
  if (std::isnan(statistic)) throw std::invalid_argument("chi_square_sf: NaN statistic");
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

GofResult chi_square_gof(const CountTable& counts, const JointDistribution& expected) {
  const double n = require_total(counts);
  double stat = 0.0;
  int support = 0;
  bool impossible_hit = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = expected[i];
    const auto observed = static_cast<double>(counts[i]);
    if (p > 0.0) {
      ++support;
      const double e = n * p;
      stat += (observed - e) * (observed - e) / e;
    } else if (observed > 0.0) {
      impossible_hit = true;
    }
  }
  const int dof = std::max(support - 1, 0);
  if (impossible_hit) {
    return {std::numeric_limits<double>::infinity(), 0.0, dof};
  }
  if (dof == 0) return {0.0, 1.0, 0};
  return {stat, chi_square_sf(stat, dof), dof};
}

GofResult chi_square_two_sample(const CountTable& x, const CountTable& y) {
  const double nx = require_total(x);
  const double ny = require_total(y);
  const double n = nx + ny;
  double stat = 0.0;
  int support = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto ox = static_cast<double>(x[i]);
    const auto oy = static_cast<double>(y[i]);
    const double column = ox + oy;
    if (column == 0.0) continue;
    ++support;
    const double ex = nx * column / n;
    const double ey = ny * column / n;
    stat += (ox - ex) * (ox - ex) / ex + (oy - ey) * (oy - ey) / ey;
  }
  const int dof = std::max(support - 1, 0);
  if (dof == 0) return {0.0, 1.0, 0};
  return {stat, chi_square_sf(stat, dof), dof};
}

ChshEstimate chsh_value(CorrelationEstimate e_ab, CorrelationEstimate e_ab2,
                        CorrelationEstimate e_a2b, CorrelationEstimate e_a2b2,
                        std::array<Angle, 4> angles) {
  for (const auto& e : {e_ab, e_ab2, e_a2b, e_a2b2}) {
    if (!(std::abs(e.value) <= 1.0)) {
      throw std::invalid_argument("chsh_value: correlation outside [-1, 1]");
    }
    if (!(e.std_error >= 0.0)) {
      throw std::invalid_argument("chsh_value: negative standard error");
    }
  }
  const double s = e_ab.value - e_ab2.value + e_a2b.value + e_a2b2.value;
  const double err = std::sqrt(e_ab.std_error * e_ab.std_error + e_ab2.std_error * e_ab2.std_error +
                               e_a2b.std_error * e_a2b.std_error +
                               e_a2b2.std_error * e_a2b2.std_error);
  return {s, err, angles};
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval: n must be >= 1");
  if (k > n) throw std::invalid_argument("wilson_interval: k must be <= n");
  if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("wilson_interval: z must be > 0");
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(k) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  // Clamp rounding at the k = 0 and k = n boundaries.
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

}  // namespace eprb
