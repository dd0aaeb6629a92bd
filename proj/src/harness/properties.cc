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

// Randomized invariant checks. Inputs come from std::mt19937_64 so the
// generators share nothing with the SplitMix64 streams under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "eprb/experiment.h"
#include "eprb/lhv.h"
#include "eprb/quantum.h"
#include "eprb/realist.h"
#include "eprb/stats.h"
#include "eprb/verify.h"

namespace eprb {

namespace {

using Gen = std::mt19937_64;
using Failure = std::optional<std::string>;
using Property = std::function<Failure(Gen&)>;

double uniform(Gen& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

std::uint64_t uniform_int(Gen& g, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(g);
}

Angle any_angle(Gen& g) { return normalize_angle(uniform(g, -50.0, 50.0)); }

bool close(double x, double y, double tol = kAnalyticTolerance) { return std::abs(x - y) <= tol; }

template <class... Args>
std::string msg(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

Outcome any_outcome(Gen& g) { return uniform_int(g, 0, 1) ? Outcome::plus : Outcome::minus; }

JointOutcome any_joint(Gen& g) { return {any_outcome(g), any_outcome(g)}; }

CountTable any_counts(Gen& g, std::uint64_t max_cell = 100000) {
  CountTable c;
  do {
    for (std::size_t i = 0; i < 4; ++i) {
      // Sprinkle in empty cells.
      c[i] = uniform_int(g, 0, 4) == 0 ? 0 : uniform_int(g, 0, max_cell);
    }
  } while (c.total() == 0);
  return c;
}

// Distinct contexts by rejection.
std::vector<Context> any_contexts(Gen& g, std::size_t n) {
  std::vector<Context> out;
  while (out.size() < n) {
    const Context c{any_angle(g), any_angle(g)};
    if (std::ranges::find(out, c) == out.end()) out.push_back(c);
  }
  return out;
}

double circular_distance(double x, double y) {
  const double d = std::abs(x - y);
  return std::min(d, kTwoPi - d);
}

// ---- quantum_core -------------------------------------------------------

Failure angle_range_and_periodicity(Gen& g) {
  const double x = uniform(g, -1000.0, 1000.0);
  const double a = normalize_angle(x).radians();
  if (!(a >= 0.0 && a < kTwoPi)) return msg("normalize(", x, ") = ", a, " out of range");
  const double shifted = normalize_angle(x + kTwoPi).radians();
  if (circular_distance(a, shifted) > kAnalyticTolerance) {
    return msg("normalize(x + 2pi) != normalize(x) for x = ", x);
  }
  return std::nullopt;
}

Failure joint_normalization(Gen& g) {
  const auto d = joint_distribution(any_angle(g), any_angle(g));
  if (!close(d.sum(), 1.0)) return msg("sum = ", d.sum());
  for (double p : d.cells()) {
    if (p < 0.0 || p > 1.0) return msg("cell out of range: ", p);
  }
  return std::nullopt;
}

Failure joint_symmetry(Gen& g) {
  const auto d = joint_distribution(any_angle(g), any_angle(g));
  if (d.p_pp != d.p_mm || d.p_pm != d.p_mp) return msg("asymmetric distribution");
  if (!d.satisfies_invariants()) return msg("satisfies_invariants() false");
  return std::nullopt;
}

Failure joint_periodicity(Gen& g) {
  const double x = uniform(g, -20.0, 20.0);
  const Angle phi = any_angle(g);
  const auto d1 = joint_distribution(normalize_angle(x), phi);
  const auto d2 = joint_distribution(normalize_angle(x + kTwoPi), phi);
  for (std::size_t i = 0; i < 4; ++i) {
    if (!close(d1[i], d2[i])) return msg("cell ", i, " differs after theta + 2pi, theta = ", x);
  }
  return std::nullopt;
}

Failure amplitude_consistency(Gen& g) {
  const Angle theta = any_angle(g);
  const Angle phi = any_angle(g);
  const auto m = singlet_amplitudes(theta, phi).squared_magnitudes();
  const auto d = joint_distribution(theta, phi);
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    total += m[i];
    if (!close(m[i], d[i])) return msg("|c|^2 != p for cell ", i);
  }
  if (!close(total, 1.0)) return msg("amplitudes not normalized: ", total);
  return std::nullopt;
}

Failure exact_no_signaling(Gen& g) {
  const Angle theta = any_angle(g);
  const Angle phi = any_angle(g);
  const Angle other = any_angle(g);
  for (Outcome o : {Outcome::plus, Outcome::minus}) {
    if (!close(marginal(theta, phi, Party::first, o), 0.5) ||
        !close(marginal(theta, other, Party::first, o), 0.5) ||
        !close(marginal(theta, phi, Party::second, o), 0.5) ||
        !close(marginal(other, phi, Party::second, o), 0.5)) {
      return msg("marginal differs from 1/2");
    }
  }
  return std::nullopt;
}

Failure correlation_identity(Gen& g) {
  const Angle theta = any_angle(g);
  const Angle phi = any_angle(g);
  const double e = correlation(theta, phi);
  if (!close(e + std::cos(theta.radians() - phi.radians()), 0.0)) {
    return msg("E + cos(theta - phi) = ", e + std::cos(theta.radians() - phi.radians()));
  }
  if (!close(e, correlation_of(joint_distribution(theta, phi)))) {
    return msg("E disagrees with the four-cell combination");
  }
  return std::nullopt;
}

Failure conditional_bayes(Gen& g) {
  const Angle theta = any_angle(g);
  const Angle phi = any_angle(g);
  const double s = std::sin((theta.radians() - phi.radians()) / 2.0);
  if (!close(conditional(theta, phi, Outcome::plus, Outcome::plus), s * s)) {
    return msg("P(A=+|B=+) != sin^2(d/2)");
  }
  const double total = conditional(theta, phi, Outcome::minus, Outcome::plus) +
                       conditional(theta, phi, Outcome::minus, Outcome::minus);
  if (!close(total, 1.0)) return msg("conditional does not sum to 1");
  return std::nullopt;
}

// ---- realist_model ------------------------------------------------------

Failure revelation_consistency(Gen& g) {
  const auto contexts = std::make_shared<const ContextSet>(any_contexts(g, uniform_int(g, 1, 6)));
  const Ledger ledger = generate_ledger(contexts, g());
  if (ledger.entries().size() != contexts->size()) return msg("entry count mismatch");
  for (std::size_t i = 0; i < contexts->size(); ++i) {
    const Context c = (*contexts)[i];
    const SystemSpinState& e = ledger.entries()[i];
    if (e.context != c) return msg("entry ", i, " stored under the wrong context");
    if (measure(ledger, c) != e.state || measure(ledger, c) != measure(ledger, c)) {
      return msg("measure disagrees with the stored entry");
    }
  }
  return std::nullopt;
}

Failure ledger_determinism(Gen& g) {
  const ContextSet contexts(any_contexts(g, uniform_int(g, 1, 8)));
  const std::uint64_t seed = g();
  const Ledger x = generate_ledger(contexts, seed);
  const Ledger y = generate_ledger(contexts, seed);
  if (!(x == y)) return msg("ledgers differ for seed ", seed);
  if (render_table1(x) != render_table1(y) || render_table1_csv(x) != render_table1_csv(y)) {
    return msg("renderings differ for seed ", seed);
  }
  return std::nullopt;
}

Failure witness_matches_search(Gen& g) {
  const auto ctx = any_contexts(g, 2);
  Grid grid{ctx[0].theta, ctx[1].theta, ctx[0].phi, ctx[1].phi};
  if (grid.theta1 == grid.theta2 || grid.phi1 == grid.phi2) return std::nullopt;
  const auto cells = grid.contexts();
  const auto set = std::make_shared<const ContextSet>(std::vector<Context>(cells.begin(), cells.end()));
  std::vector<JointOutcome> states;
  // Bias toward product-form ledgers so both branches are exercised.
  if (uniform_int(g, 0, 1)) {
    const Outcome f1 = any_outcome(g), f2 = any_outcome(g), g1 = any_outcome(g), g2 = any_outcome(g);
    states = {{f1, g1}, {f1, g2}, {f2, g1}, {f2, g2}};
    if (uniform_int(g, 0, 1)) {
      auto& s = states[uniform_int(g, 0, 3)];
      s = uniform_int(g, 0, 1) ? JointOutcome{flip(s.a), s.b} : JointOutcome{s.a, flip(s.b)};
    }
  } else {
    for (int i = 0; i < 4; ++i) states.push_back(any_joint(g));
  }
  const Ledger ledger = make_ledger(set, states);
  const WitnessResult w = factorizability_witness(ledger, grid);

  bool exists = false;
  for (Outcome f1 : {Outcome::plus, Outcome::minus})
    for (Outcome f2 : {Outcome::plus, Outcome::minus})
      for (Outcome g1 : {Outcome::plus, Outcome::minus})
        for (Outcome g2 : {Outcome::plus, Outcome::minus}) {
          const JointOutcome want[4] = {{f1, g1}, {f1, g2}, {f2, g1}, {f2, g2}};
          exists = exists || std::equal(states.begin(), states.end(), want);
        }
  if (w.decomposable != exists) return msg("witness says ", w.decomposable, ", search says ", exists);
  if (w.decomposable == w.counterexample.has_value()) return msg("counterexample presence wrong");
  if (w.counterexample) {
    const auto [c1, c2] = *w.counterexample;
    const JointOutcome s1 = measure(ledger, c1);
    const JointOutcome s2 = measure(ledger, c2);
    const bool row_clash = c1.theta == c2.theta && s1.a != s2.a;
    const bool column_clash = c1.phi == c2.phi && s1.b != s2.b;
    if (!row_clash && !column_clash) return msg("counterexample does not witness a clash");
  }
  return std::nullopt;
}

// ---- lhv_baseline -------------------------------------------------------

Failure lhv_factorization(Gen& g) {
  const HiddenVariable l{any_angle(g)};
  const Angle theta = any_angle(g), theta2 = any_angle(g);
  const Angle phi = any_angle(g), phi2 = any_angle(g);
  if (sign_model_outcomes(l, theta, phi).a != sign_model_outcomes(l, theta, phi2).a) {
    return msg("A depends on phi");
  }
  if (sign_model_outcomes(l, theta, phi).b != sign_model_outcomes(l, theta2, phi).b) {
    return msg("B depends on theta");
  }
  return std::nullopt;
}

Failure lhv_chsh_bound(Gen& g) {
  const Angle a = any_angle(g), a2 = any_angle(g), b = any_angle(g), b2 = any_angle(g);
  const auto e = [](Angle x, Angle y) { return lhv_correlation(x, y, Analytic{}); };
  const double s = e(a, b) - e(a, b2) + e(a2, b) + e(a2, b2);
  if (std::abs(s) > 2.0 + 1e-9) return msg("|S| = ", std::abs(s), " > 2");
  return std::nullopt;
}

Failure lambda_range_and_determinism(Gen& g) {
  const std::uint64_t seed = g();
  const std::uint64_t index = g();
  const HiddenVariable x = sample_lambda(seed, index);
  if (!(x.lambda.radians() >= 0.0 && x.lambda.radians() < kTwoPi)) return msg("lambda out of range");
  if (sample_lambda(seed, index).lambda != x.lambda) return msg("lambda not deterministic");
  return std::nullopt;
}

// ---- stats --------------------------------------------------------------

Failure gof_permutation_invariance(Gen& g) {
  const CountTable counts = any_counts(g);
  std::array<double, 4> w{};
  for (double& x : w) x = uniform_int(g, 0, 5) == 0 ? 0.0 : uniform(g, 0.01, 1.0);
  if (std::accumulate(w.begin(), w.end(), 0.0) == 0.0) w[0] = 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const JointDistribution expected{w[0] / total, w[1] / total, w[2] / total, w[3] / total,
                                   JointDistribution::Kind::empirical};
  std::array<std::size_t, 4> perm = {0, 1, 2, 3};
  std::ranges::shuffle(perm, g);
  CountTable pc;
  std::array<double, 4> pw{};
  for (std::size_t i = 0; i < 4; ++i) {
    pc[i] = counts[perm[i]];
    pw[i] = expected[perm[i]];
  }
  const JointDistribution pe{pw[0], pw[1], pw[2], pw[3], JointDistribution::Kind::empirical};
  const GofResult r1 = chi_square_gof(counts, expected);
  const GofResult r2 = chi_square_gof(pc, pe);
  if (std::isinf(r1.statistic) || std::isinf(r2.statistic)) {
    if (r1.statistic != r2.statistic) return msg("infinite statistic not preserved");
    return std::nullopt;
  }
  if (std::abs(r1.statistic - r2.statistic) > 1e-9 * std::max(1.0, r1.statistic) ||
      r1.dof != r2.dof) {
    return msg("statistic changed under permutation: ", r1.statistic, " vs ", r2.statistic);
  }
  return std::nullopt;
}

Failure gof_p_monotone(Gen& g) {
  const int dof = static_cast<int>(uniform_int(g, 1, 10));
  double x = uniform(g, 0.0, 40.0);
  double y = uniform(g, 0.0, 40.0);
  if (x > y) std::swap(x, y);
  const double px = chi_square_sf(x, dof);
  const double py = chi_square_sf(y, dof);
  if (py > px) return msg("sf(", y, ") > sf(", x, ") at dof ", dof);
  if (px < 0.0 || px > 1.0) return msg("p out of range");
  return std::nullopt;
}

Failure correlation_estimate_definition(Gen& g) {
  const CountTable c = any_counts(g);
  const CorrelationEstimate e = empirical_correlation(c);
  double products = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const JointOutcome o = cell_outcome(i);
    products += static_cast<double>(c[i]) * value(o.a) * value(o.b);
  }
  const double expected = products / static_cast<double>(c.total());
  if (e.value < -1.0 || e.value > 1.0) return msg("E_hat outside [-1, 1]");
  if (!close(e.value, expected)) return msg("E_hat ", e.value, " != product average ", expected);
  if (!close(empirical_distribution(c).sum(), 1.0)) return msg("frequencies do not sum to 1");
  return std::nullopt;
}

Failure chsh_algebraic_bound(Gen& g) {
  std::array<CorrelationEstimate, 4> e;
  for (auto& x : e) {
    // Corners with some probability so the |S| = 4 case is reached.
    x.value = uniform_int(g, 0, 2) == 0 ? (uniform_int(g, 0, 1) ? 1.0 : -1.0) : uniform(g, -1.0, 1.0);
  }
  const ChshEstimate s = chsh_value(e[0], e[1], e[2], e[3]);
  if (std::abs(s.s_value) > 4.0) return msg("|S| > 4");
  if (std::abs(s.s_value) == 4.0) {
    const double sign = s.s_value > 0 ? 1.0 : -1.0;
    if (e[0].value != sign || e[1].value != -sign || e[2].value != sign || e[3].value != sign) {
      return msg("|S| = 4 without the matching sign pattern");
    }
  }
  return std::nullopt;
}

Failure wilson_contains_point(Gen& g) {
  const std::uint64_t n = uniform_int(g, 1, 1000000);
  const std::uint64_t k = uniform_int(g, 0, 3) == 0 ? (uniform_int(g, 0, 1) ? 0 : n) : uniform_int(g, 0, n);
  const double z = uniform(g, 0.1, 5.0);
  const Interval iv = wilson_interval(k, n, z);
  const double p = static_cast<double>(k) / static_cast<double>(n);
  if (!(0.0 <= iv.lo && iv.lo <= p && p <= iv.hi && iv.hi <= 1.0)) {
    return msg("interval [", iv.lo, ", ", iv.hi, "] misses ", p);
  }
  return std::nullopt;
}

// ---- harness ------------------------------------------------------------

Failure sampling_worker_invariance(Gen& g) {
  const auto contexts = std::make_shared<const ContextSet>(any_contexts(g, uniform_int(g, 1, 4)));
  const Model model = static_cast<Model>(uniform_int(g, 0, 2));
  const std::size_t pair = uniform_int(g, 0, contexts->size() - 1);
  const std::uint64_t trials = uniform_int(g, 1, 300);
  const std::uint64_t seed = g();
  const auto workers = static_cast<unsigned>(uniform_int(g, 2, 8));
  const CountTable serial = sample_counts(model, contexts, pair, trials, seed, 1);
  const CountTable parallel = sample_counts(model, contexts, pair, trials, seed, workers);
  if (!(serial == parallel)) return msg(to_string(model), " counts depend on worker count");
  if (serial.total() != trials) return msg("count total != trials");
  return std::nullopt;
}

}  // namespace

std::vector<PropertyResult> run_property_suites(std::uint64_t seed, std::uint64_t cases) {
  struct Entry {
    const char* name;
    Property check;
    std::uint64_t min_cases;
  };
  const Entry suites[] = {
      {"quantum.angle_range_and_periodicity", angle_range_and_periodicity, 0},
      {"quantum.joint_normalization", joint_normalization, 0},
      {"quantum.joint_symmetry", joint_symmetry, 0},
      {"quantum.joint_periodicity", joint_periodicity, 0},
      {"quantum.amplitude_consistency", amplitude_consistency, 0},
      {"quantum.exact_no_signaling", exact_no_signaling, 0},
      {"quantum.correlation_identity", correlation_identity, 0},
      {"quantum.conditional_bayes", conditional_bayes, 0},
      {"realist.revelation_consistency", revelation_consistency, 0},
      {"realist.ledger_determinism", ledger_determinism, 0},
      {"realist.witness_matches_search", witness_matches_search, 0},
      {"lhv.factorization", lhv_factorization, 0},
      {"lhv.chsh_bound", lhv_chsh_bound, 10000},
      {"lhv.lambda_range_and_determinism", lambda_range_and_determinism, 0},
      {"stats.gof_permutation_invariance", gof_permutation_invariance, 0},
      {"stats.gof_p_monotone", gof_p_monotone, 0},
      {"stats.correlation_estimate_definition", correlation_estimate_definition, 0},
      {"stats.chsh_algebraic_bound", chsh_algebraic_bound, 0},
      {"stats.wilson_contains_point", wilson_contains_point, 0},
      {"harness.sampling_worker_invariance", sampling_worker_invariance, 0},
  };

  std::vector<PropertyResult> results;
  std::uint64_t suite_index = 0;
  for (const Entry& e : suites) {
    Gen g(seed ^ (0x9E3779B97F4A7C15ULL * ++suite_index));
    PropertyResult r{e.name, std::max(cases, e.min_cases), true, {}};
    for (std::uint64_t i = 0; i < r.cases; ++i) {
      if (Failure f = e.check(g)) {
        r.passed = false;
        r.failure = "case " + std::to_string(i) + ": " + *f;
        break;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace eprb
