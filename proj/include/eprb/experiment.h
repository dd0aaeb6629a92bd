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

#ifndef EPRB_EXPERIMENT_H
#define EPRB_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eprb/angle.h"
#include "eprb/quantum.h"
#include "eprb/realist.h"
#include "eprb/stats.h"

namespace eprb {

enum class Model { quantum, realist, lhv };

std::string_view to_string(Model m);
std::optional<Model> parse_model(std::string_view s);

/// Short description of how outcomes are produced, echoed in reports.
std::string_view model_rules(Model m);

enum class OutputFormat { json, csv };

std::string_view to_string(OutputFormat f);
std::optional<OutputFormat> parse_output_format(std::string_view s);

/// Deliberate defects for mutation-testing the verification suite.
enum class Fault {
  none,
  /// Negate particle 2's outcome after sampling, which flips the sign of
  /// every correlation.
  correlation_sign,
};

std::string_view to_string(Fault f);
std::optional<Fault> parse_fault(std::string_view s);

struct Tolerances {
  /// A pair passes goodness-of-fit when p > gof_alpha.
  double gof_alpha = 1e-3;
  /// Allowed |marginal - 1/2|; unset means max(0.005, 2.5/sqrt(N)).
  std::optional<double> no_signaling_tol;
  /// quantum_like requires |S_hat| - chsh_sigmas * S_err > 2.
  double chsh_sigmas = 3.0;

  double effective_no_signaling_tol(std::uint64_t trials) const;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// a, a', b, b' = 0, pi/2, pi/4, 3pi/4.
std::array<Angle, 4> default_chsh_angles();

struct RunConfig {
  Model model = Model::quantum;
  /// a, a', b, b'. Particle 1 uses a or a', particle 2 uses b or b'.
  std::array<Angle, 4> chsh_angles = default_chsh_angles();
  std::vector<Context> extra_contexts;
  std::uint64_t trials_per_pair = 100000;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::json;
  std::optional<std::filesystem::path> out;
  Tolerances tolerances;
  Fault fault = Fault::none;

  // Execution settings: never part of the report payload.
  unsigned workers = 1;
  std::optional<std::filesystem::path> sidecar;

  /// Compares the fields echoed into reports.
  bool same_payload(const RunConfig& other) const;
};

/// (a,b), (a,b'), (a',b), (a',b') followed by the extra contexts.
/// Throws std::invalid_argument on duplicates.
ContextSet run_contexts(const RunConfig& config);

struct PairReport {
  Context context;
  CountTable counts;
  JointDistribution freq;
  JointDistribution expected;
  GofResult chi2;
  CorrelationEstimate e_hat;
  double e_theory = 0.0;

  friend bool operator==(const PairReport&, const PairReport&) = default;
};

enum class ChshSide { quantum_like, local_bounded };

std::string_view to_string(ChshSide s);
std::optional<ChshSide> parse_chsh_side(std::string_view s);

struct ChshReport {
  double s_hat = 0.0;
  double s_err = 0.0;
  double s_theory = 0.0;
  std::array<Angle, 4> angles{};

  friend bool operator==(const ChshReport&, const ChshReport&) = default;
};

struct Verdicts {
  bool gof_pass = false;
  bool no_signaling_pass = false;
  ChshSide chsh_side = ChshSide::local_bounded;

  friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

/// Everything here is a pure function of the payload fields of config.
struct Report {
  RunConfig config;
  std::vector<PairReport> pairs;
  ChshReport chsh;
  Verdicts verdicts;

  friend bool operator==(const Report& x, const Report& y) {
    return x.config.same_payload(y.config) && x.pairs == y.pairs && x.chsh == y.chsh &&
           x.verdicts == y.verdicts;
  }
};

/// Theoretical law each model should reproduce for a context: the
/// singlet distribution for quantum and realist, the sign model's law for
/// lhv.
JointDistribution theoretical_distribution(Model model, Context c);
double theoretical_correlation(Model model, Context c);

/// Runs `trials` trials of the context at `pair_index`. Trial t uses
/// randomness keyed by derive_key(seed, pair_index, t):
///   quantum: one uniform, inverse-CDF over the joint distribution;
///   realist: that key seeds a fresh ledger over all contexts, which is
///            then measured at the pair;
///   lhv:     lambda from the key's stream, then the sign model.
/// Counts are identical for any worker count.
CountTable sample_counts(Model model, const std::shared_ptr<const ContextSet>& contexts,
                         std::size_t pair_index, std::uint64_t trials, std::uint64_t seed,
                         unsigned workers = 1, Fault fault = Fault::none);

/// Throws std::invalid_argument for trials_per_pair = 0 or duplicate
/// contexts.
Report run_experiment(const RunConfig& config);

}  // namespace eprb

#endif  // EPRB_EXPERIMENT_H
