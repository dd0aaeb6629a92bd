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

#ifndef EPRB_REALIST_H
#define EPRB_REALIST_H

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eprb/angle.h"
#include "eprb/outcome.h"
#include "eprb/quantum.h"
#include "eprb/rng.h"

namespace eprb {

/// A pair of magnet angles (theta at particle 1, phi at particle 2).
struct Context {
  Angle theta;
  Angle phi;

  friend constexpr bool operator==(Context, Context) = default;
  friend constexpr auto operator<=>(Context, Context) = default;
};

std::string describe(Context c);

class UnknownContextError : public std::out_of_range {
 public:
  explicit UnknownContextError(Context c);
  Context context() const { return context_; }

 private:
  Context context_;
};

/// Nonempty ordered list of pairwise distinct contexts. The quantum
/// joint distribution of each context is computed once here.
class ContextSet {
 public:
  /// Throws std::invalid_argument if empty or if two contexts coincide.
  explicit ContextSet(std::vector<Context> contexts);

  std::span<const Context> contexts() const { return contexts_; }
  std::size_t size() const { return contexts_.size(); }
  const Context& operator[](std::size_t i) const { return contexts_[i]; }
  const JointDistribution& distribution(std::size_t i) const { return distributions_[i]; }

  std::optional<std::size_t> index_of(Context c) const;

  friend bool operator==(const ContextSet& x, const ContextSet& y) {
    return x.contexts_ == y.contexts_;
  }

 private:
  std::vector<Context> contexts_;
  std::vector<JointDistribution> distributions_;
  std::vector<std::pair<Context, std::size_t>> sorted_;
};

/// A pre-existing system spin state |theta,a; phi,b> for one context.
struct SystemSpinState {
  Context context;
  JointOutcome state;

  friend constexpr bool operator==(SystemSpinState, SystemSpinState) = default;
};

/// One pre-existing system spin state per context, fixed at generation.
class Ledger {
 public:
  std::uint64_t seed() const { return seed_; }
  std::string_view generator_id() const { return generator_id_; }
  const ContextSet& contexts() const { return *contexts_; }
  std::span<const SystemSpinState> entries() const { return entries_; }

  /// Throws UnknownContextError when `c` is not a key.
  const SystemSpinState& entry(Context c) const;

  friend bool operator==(const Ledger& x, const Ledger& y) {
    return x.seed_ == y.seed_ && x.generator_id_ == y.generator_id_ &&
           *x.contexts_ == *y.contexts_ && x.entries_ == y.entries_;
  }

 private:
  friend Ledger generate_ledger(std::shared_ptr<const ContextSet>, std::uint64_t);
  friend Ledger make_ledger(std::shared_ptr<const ContextSet>, std::vector<JointOutcome>,
                            std::uint64_t);

  Ledger(std::shared_ptr<const ContextSet> contexts, std::vector<SystemSpinState> entries,
         std::uint64_t seed)
      : contexts_(std::move(contexts)), entries_(std::move(entries)), seed_(seed) {}

  std::shared_ptr<const ContextSet> contexts_;
  std::vector<SystemSpinState> entries_;
  std::uint64_t seed_ = 0;
  std::string_view generator_id_ = SplitMix64::kGeneratorId;
};

/// Entry i is drawn from the joint distribution of context i using one
/// uniform from SplitMix64(derive_key(seed, i)). Entries for different
/// contexts are independent, and the ledger depends only on
/// (seed, contexts, order).
Ledger generate_ledger(std::shared_ptr<const ContextSet> contexts, std::uint64_t seed);
Ledger generate_ledger(const ContextSet& contexts, std::uint64_t seed);

/// Builds a ledger with explicit states, in context order. Used for
/// fixtures and for replaying recorded runs; seed is recorded only.
Ledger make_ledger(std::shared_ptr<const ContextSet> contexts, std::vector<JointOutcome> states,
                   std::uint64_t seed = 0);

/// Reveals the stored state for `chosen`. Never modifies the ledger.
JointOutcome measure(const Ledger& ledger, Context chosen);

struct RunRecord {
  std::uint64_t seed;
  Context chosen;
  JointOutcome revealed;
};

RunRecord measure_run(const Ledger& ledger, Context chosen);

/// {theta1, theta2} x {phi1, phi2}.
struct Grid {
  Angle theta1, theta2;
  Angle phi1, phi2;

  std::array<Context, 4> contexts() const {
    return {Context{theta1, phi1}, Context{theta1, phi2}, Context{theta2, phi1},
            Context{theta2, phi2}};
  }
};

struct WitnessResult {
  bool decomposable = false;
  /// Two grid contexts that cannot share one local value; set iff
  /// !decomposable.
  std::optional<std::pair<Context, Context>> counterexample;
};

/// Decides whether the ledger restricted to `grid` has the product form
/// (f(theta), g(phi)). Throws UnknownContextError for a missing context.
WitnessResult factorizability_witness(const Ledger& ledger, const Grid& grid);

/// One row per context in ContextSet order, e.g.
///   θ′ = 0 | φ′ = 0.7853981633974483 | |θ′,+; φ′,−⟩ | +−
std::string render_table1(const Ledger& ledger);

/// Header "theta_rad,phi_rad,state", state as ASCII "+-".
std::string render_table1_csv(const Ledger& ledger);

}  // namespace eprb

#endif  // EPRB_REALIST_H
