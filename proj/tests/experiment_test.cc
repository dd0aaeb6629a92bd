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

#include "eprb/experiment.h"

#include <cmath>
#include <stdexcept>

#include "eprb/lhv.h"
#include "eprb/report_io.h"
#include "eprb/rng.h"
#include "gtest/gtest.h"

using namespace eprb;

namespace {

Angle rad(double x) { return normalize_angle(x); }

RunConfig small_config(Model m, std::uint64_t trials = 20000) {
  RunConfig c;
  c.model = m;
  c.trials_per_pair = trials;
  c.seed = 7;
  return c;
}

}  // namespace

TEST(run_contexts, chsh_pairs_then_extras) {
  RunConfig c;
  c.extra_contexts = {{rad(1.0), rad(2.0)}};
  const ContextSet set = run_contexts(c);
  ASSERT_EQ(set.size(), 5u);
  const auto a = default_chsh_angles();
  EXPECT_EQ(set[0], (Context{a[0], a[2]}));
  EXPECT_EQ(set[1], (Context{a[0], a[3]}));
  EXPECT_EQ(set[2], (Context{a[1], a[2]}));
  EXPECT_EQ(set[3], (Context{a[1], a[3]}));
  EXPECT_EQ(set[4], (Context{rad(1.0), rad(2.0)}));

  c.extra_contexts = {{a[0], a[2]}};
  EXPECT_THROW(run_contexts(c), std::invalid_argument);
}

TEST(run_experiment, equal_angles_have_empty_aligned_cells) {
  RunConfig c = small_config(Model::quantum, 10000);
  c.chsh_angles = {rad(0), rad(1), rad(0), rad(2)};
  const Report r = run_experiment(c);
  EXPECT_EQ(r.pairs[0].context, (Context{rad(0), rad(0)}));
  EXPECT_EQ(r.pairs[0].counts.n_pp, 0u);
  EXPECT_EQ(r.pairs[0].counts.n_mm, 0u);
  EXPECT_EQ(r.pairs[0].chi2.dof, 1);
}

TEST(run_experiment, default_chsh_quantum) {
  const Report r = run_experiment(small_config(Model::quantum, 1000000));
  EXPECT_NEAR(r.chsh.s_hat, -2.0 * std::sqrt(2.0), 0.01);
  EXPECT_NEAR(r.chsh.s_theory, -2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_EQ(r.verdicts.chsh_side, ChshSide::quantum_like);
  EXPECT_TRUE(r.verdicts.gof_pass);
  EXPECT_TRUE(r.verdicts.no_signaling_pass);
}

TEST(run_experiment, lhv_is_local_bounded) {
  const Report r = run_experiment(small_config(Model::lhv, 200000));
  EXPECT_NEAR(r.chsh.s_theory, -2.0, 1e-12);
  EXPECT_NEAR(r.chsh.s_hat, -2.0, 0.03);
  EXPECT_EQ(r.verdicts.chsh_side, ChshSide::local_bounded);
  EXPECT_TRUE(r.verdicts.gof_pass);
  for (const PairReport& p : r.pairs) EXPECT_EQ(p.expected, sign_model_distribution(p.context.theta, p.context.phi));
}

TEST(run_experiment, realist_with_extra_contexts) {
  RunConfig c = small_config(Model::realist);
  c.extra_contexts = {{rad(0.3), rad(0.3)}, {rad(1.0), rad(2.5)}};
  const Report r = run_experiment(c);
  ASSERT_EQ(r.pairs.size(), 6u);
  for (const PairReport& p : r.pairs) EXPECT_EQ(p.counts.total(), c.trials_per_pair);
  EXPECT_EQ(r.pairs[4].counts.n_pp + r.pairs[4].counts.n_mm, 0u);
  EXPECT_TRUE(r.verdicts.gof_pass);
}

TEST(run_experiment, report_independent_of_workers) {
  for (Model m : {Model::quantum, Model::realist, Model::lhv}) {
    RunConfig c = small_config(m, 30001);
    c.workers = 1;
    const Report serial = run_experiment(c);
    c.workers = 7;
    const Report parallel = run_experiment(c);
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(report_to_json(serial), report_to_json(parallel));
  }
}

TEST(run_experiment, seed_changes_counts) {
  RunConfig c = small_config(Model::quantum);
  const Report a = run_experiment(c);
  c.seed = 8;
  const Report b = run_experiment(c);
  EXPECT_NE(a.pairs[0].counts, b.pairs[0].counts);
}

TEST(run_experiment, rejects_zero_trials) {
  EXPECT_THROW(run_experiment(small_config(Model::quantum, 0)), std::invalid_argument);
}

TEST(run_experiment, fault_flips_correlation_sign) {
  RunConfig c = small_config(Model::quantum, 100000);
  c.fault = Fault::correlation_sign;
  const Report r = run_experiment(c);
  EXPECT_NEAR(r.chsh.s_hat, 2.0 * std::sqrt(2.0), 0.05);
  EXPECT_FALSE(r.verdicts.gof_pass);
}

TEST(sample_counts, matches_per_trial_definition) {
  const auto set = std::make_shared<const ContextSet>(std::vector<Context>{{rad(0.2), rad(1.4)}});
  const CountTable counts = sample_counts(Model::quantum, set, 0, 500, 11);
  CountTable manual;
  for (std::uint64_t t = 0; t < 500; ++t) {
    SplitMix64 rng(derive_key(11, 0, t));
    manual.add(sample_cell(set->distribution(0), rng.uniform()));
  }
  EXPECT_EQ(counts, manual);
  EXPECT_THROW(sample_counts(Model::quantum, set, 1, 10, 1), std::out_of_range);
}

TEST(tolerances, default_no_signaling_tolerance) {
  Tolerances t;
  EXPECT_DOUBLE_EQ(t.effective_no_signaling_tol(1000000), 0.005);
  EXPECT_DOUBLE_EQ(t.effective_no_signaling_tol(10000), 0.025);
  t.no_signaling_tol = 0.1;
  EXPECT_EQ(t.effective_no_signaling_tol(10000), 0.1);
}
