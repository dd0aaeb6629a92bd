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

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace eprb;

namespace {

// Closed-form chi-square survival for integer dof, used as the test oracle:
// even k: exp(-x/2) sum_{j<k/2} (x/2)^j / j!
// odd k:  erfc(sqrt(x/2)) + exp(-x/2) sum_{j=1}^{(k-1)/2} (x/2)^(j-1/2) / Gamma(j+1/2)
double chi_square_sf_oracle(double x, int k) {
  const double h = x / 2.0;
  if (k % 2 == 0) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < k / 2; ++j) {
      term *= h / j;
      sum += term;
    }
    return std::exp(-h) * sum;
  }
  double sum = 0.0;
  for (int j = 1; j <= (k - 1) / 2; ++j) {
    sum += std::exp((j - 0.5) * std::log(h) - std::lgamma(j + 0.5));
  }
  return std::erfc(std::sqrt(h)) + std::exp(-h) * sum;
}

}  // namespace

TEST(empirical_distribution, examples) {
  const auto u = empirical_distribution({1, 1, 1, 1});
  for (double p : u.cells()) EXPECT_DOUBLE_EQ(p, 0.25);
  const auto a = empirical_distribution({0, 5, 5, 0});
  EXPECT_EQ(a.p_pp, 0.0);
  EXPECT_DOUBLE_EQ(a.p_pm, 0.5);
  const auto b = empirical_distribution({3, 2, 2, 3});
  EXPECT_DOUBLE_EQ(b.p_pp, 0.3);
  EXPECT_DOUBLE_EQ(b.p_pm, 0.2);
  EXPECT_EQ(b.kind, JointDistribution::Kind::empirical);
  EXPECT_THROW(empirical_distribution({}), std::invalid_argument);
}

TEST(empirical_correlation, examples) {
  const auto anti = empirical_correlation({0, 5, 5, 0});
  EXPECT_EQ(anti.value, -1.0);
  EXPECT_EQ(anti.std_error, 0.0);
  EXPECT_EQ(empirical_correlation({5, 0, 0, 5}).value, 1.0);
  const auto flat = empirical_correlation({250, 250, 250, 250});
  EXPECT_EQ(flat.value, 0.0);
  EXPECT_NEAR(flat.std_error, 0.0316227766, 1e-9);
  EXPECT_THROW(empirical_correlation({}), std::invalid_argument);
}

TEST(empirical_marginal_plus, parties) {
  const CountTable c{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(empirical_marginal_plus(c, Party::first), 0.3);
  EXPECT_DOUBLE_EQ(empirical_marginal_plus(c, Party::second), 0.4);
}

TEST(chi_square_sf, matches_closed_forms) {
  for (int k = 1; k <= 10; ++k) {
    for (double x : {0.01, 0.5, 1.0, 2.0, 3.5, 5.0, 7.815, 10.0, 20.0, 35.0, 60.0}) {
      const double oracle = chi_square_sf_oracle(x, k);
      EXPECT_NEAR(chi_square_sf(x, k), oracle, 1e-10 * oracle) << "x=" << x << " k=" << k;
    }
  }
}

TEST(chi_square_sf, tabulated_critical_values) {
  EXPECT_NEAR(chi_square_sf(7.815, 3), 0.05, 1e-3);
  EXPECT_NEAR(chi_square_sf(3.841, 1), 0.05, 1e-3);
  EXPECT_NEAR(chi_square_sf(11.345, 3), 0.01, 1e-4);
  EXPECT_EQ(chi_square_sf(0.0, 3), 1.0);
  EXPECT_EQ(chi_square_sf(std::numeric_limits<double>::infinity(), 3), 0.0);
  EXPECT_THROW(chi_square_sf(1.0, 0), std::invalid_argument);
  EXPECT_THROW(regularized_gamma_q(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(regularized_gamma_q(1.0, -1.0), std::invalid_argument);
}

TEST(chi_square_gof, proportional_counts) {
  const auto r = chi_square_gof({100, 200, 300, 400}, {0.1, 0.2, 0.3, 0.4});
  EXPECT_NEAR(r.statistic, 0.0, 1e-9);
  EXPECT_NEAR(r.p_value, 1.0, 1e-9);
  EXPECT_EQ(r.dof, 3);
}

TEST(chi_square_gof, zero_expected_cells) {
  const auto r = chi_square_gof({0, 500, 500, 0}, {0.0, 0.5, 0.5, 0.0});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.dof, 1);
  EXPECT_EQ(r.p_value, 1.0);

  const auto hit = chi_square_gof({1, 499, 500, 0}, {0.0, 0.5, 0.5, 0.0});
  EXPECT_TRUE(std::isinf(hit.statistic));
  EXPECT_EQ(hit.p_value, 0.0);
  EXPECT_EQ(hit.dof, 1);

  const auto single = chi_square_gof({0, 7, 0, 0}, {0.0, 1.0, 0.0, 0.0});
  EXPECT_EQ(single.dof, 0);
  EXPECT_EQ(single.p_value, 1.0);
}

TEST(chi_square_gof, hand_computed_uniform_case) {
  // (50^2 + 50^2) / 250 = 20 over 3 dof.
  const auto r = chi_square_gof({300, 200, 250, 250}, {0.25, 0.25, 0.25, 0.25});
  EXPECT_NEAR(r.statistic, 20.0, 1e-12);
  EXPECT_EQ(r.dof, 3);
  // scipy.stats.chi2.sf(20, 3)
  EXPECT_NEAR(r.p_value, 1.6974243555282632e-4, 1e-12);
  EXPECT_THROW(chi_square_gof({}, {0.25, 0.25, 0.25, 0.25}), std::invalid_argument);
}

TEST(chi_square_two_sample, identical_and_different_samples) {
  const auto same = chi_square_two_sample({10, 20, 30, 40}, {10, 20, 30, 40});
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_NEAR(same.p_value, 1.0, 1e-12);
  EXPECT_EQ(same.dof, 3);

  const auto zeros = chi_square_two_sample({0, 50, 50, 0}, {0, 60, 40, 0});
  EXPECT_EQ(zeros.dof, 1);
  // 2x2 table [[50,50],[60,40]]: Pearson statistic by hand = 2.0202...
  EXPECT_NEAR(zeros.statistic, 200.0 * std::pow(50.0 * 40 - 50.0 * 60, 2) / (100.0 * 100 * 110 * 90), 1e-12);

  const auto far = chi_square_two_sample({1000, 0, 0, 1000}, {0, 1000, 1000, 0});
  EXPECT_LT(far.p_value, 1e-100);
}

TEST(chsh_value, examples) {
  EXPECT_EQ(chsh_value({0, 0}, {0, 0}, {0, 0}, {0, 0}).s_value, 0.0);
  EXPECT_NEAR(chsh_value({-0.70711, 0}, {0.70711, 0}, {-0.70711, 0}, {-0.70711, 0}).s_value, -2.82843,
              1e-4);
  EXPECT_NEAR(chsh_value({-0.5, 0}, {0.5, 0}, {-0.5, 0}, {-0.5, 0}).s_value, -2.0, 1e-12);
  const auto s = chsh_value({0, 0.3}, {0, 0.4}, {0, 0.0}, {0, 0.0});
  EXPECT_NEAR(s.std_error, 0.5, 1e-12);
  EXPECT_THROW(chsh_value({1.01, 0}, {0, 0}, {0, 0}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(chsh_value({0, -1}, {0, 0}, {0, 0}, {0, 0}), std::invalid_argument);
}

TEST(wilson_interval, examples) {
  const auto zero = wilson_interval(0, 100, 1.96);
  EXPECT_EQ(zero.lo, 0.0);
  // z^2/n / (1 + z^2/n), checked against a standalone evaluation.
  EXPECT_NEAR(zero.hi, 0.03699480747600191, 1e-12);

  const auto half = wilson_interval(50, 100, 1.96);
  EXPECT_NEAR(half.lo + half.hi, 1.0, 1e-12);
  EXPECT_LT(half.lo, 0.5);
  EXPECT_GT(half.hi, 0.5);

  const auto all = wilson_interval(100, 100, 1.96);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_NEAR(all.lo, 1.0 - 0.03699480747600191, 1e-12);

  EXPECT_THROW(wilson_interval(0, 0, 1.96), std::invalid_argument);
  EXPECT_THROW(wilson_interval(5, 4, 1.96), std::invalid_argument);
  EXPECT_THROW(wilson_interval(1, 4, 0.0), std::invalid_argument);
}
