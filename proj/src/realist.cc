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

#include "eprb/realist.h"

#include <algorithm>
#include <sstream>

namespace eprb {

std::string describe(Context c) {
  return "(" + format_double(c.theta.radians()) + ", " + format_double(c.phi.radians()) + ")";
}

UnknownContextError::UnknownContextError(Context c)
    : std::out_of_range("unknown context " + describe(c)), context_(c) {}

ContextSet::ContextSet(std::vector<Context> contexts) : contexts_(std::move(contexts)) {
  if (contexts_.empty()) {
    throw std::invalid_argument("context set must not be empty");
  }
  sorted_.reserve(contexts_.size());
  distributions_.reserve(contexts_.size());
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    sorted_.emplace_back(contexts_[i], i);
    distributions_.push_back(joint_distribution(contexts_[i].theta, contexts_[i].phi));
  }
  std::ranges::sort(sorted_, {}, &std::pair<Context, std::size_t>::first);
  const auto dup = std::ranges::adjacent_find(
      sorted_, [](const auto& x, const auto& y) { return x.first == y.first; });
  if (dup != sorted_.end()) {
    throw std::invalid_argument("duplicate context " + describe(dup->first));
  }
}

std::optional<std::size_t> ContextSet::index_of(Context c) const {
  if (contexts_.size() <= 8) {
    for (std::size_t i = 0; i < contexts_.size(); ++i) {
      if (contexts_[i] == c) return i;
    }
    return std::nullopt;
  }
  const auto it = std::ranges::lower_bound(sorted_, c, {}, &std::pair<Context, std::size_t>::first);
  if (it == sorted_.end() || it->first != c) return std::nullopt;
  return it->second;
}

const SystemSpinState& Ledger::entry(Context c) const {
  const auto i = contexts_->index_of(c);
  if (!i) throw UnknownContextError(c);
  return entries_[*i];
}

Ledger generate_ledger(std::shared_ptr<const ContextSet> contexts, std::uint64_t seed) {
  const ContextSet& set = *contexts;
  std::vector<SystemSpinState> entries;
  entries.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    SplitMix64 rng(derive_key(seed, i));
    entries.push_back({set[i], sample_cell(set.distribution(i), rng.uniform())});
  }
  return Ledger(std::move(contexts), std::move(entries), seed);
}

Ledger generate_ledger(const ContextSet& contexts, std::uint64_t seed) {
  return generate_ledger(std::make_shared<const ContextSet>(contexts), seed);
}

Ledger make_ledger(std::shared_ptr<const ContextSet> contexts, std::vector<JointOutcome> states,
                   std::uint64_t seed) {
  if (states.size() != contexts->size()) {
    throw std::invalid_argument("make_ledger: need exactly one state per context");
  }
  std::vector<SystemSpinState> entries;
  entries.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    entries.push_back({(*contexts)[i], states[i]});
  }
  return Ledger(std::move(contexts), std::move(entries), seed);
}

JointOutcome measure(const Ledger& ledger, Context chosen) { return ledger.entry(chosen).state; }

RunRecord measure_run(const Ledger& ledger, Context chosen) {
  return {ledger.seed(), chosen, measure(ledger, chosen)};
}

WitnessResult factorizability_witness(const Ledger& ledger, const Grid& grid) {
  const auto [c11, c12, c21, c22] = grid.contexts();
  const JointOutcome s11 = measure(ledger, c11);
  const JointOutcome s12 = measure(ledger, c12);
  const JointOutcome s21 = measure(ledger, c21);
  const JointOutcome s22 = measure(ledger, c22);

  // f(theta_i) must be the same whichever phi is set; g(phi_j) likewise.
  if (s11.a != s12.a) return {false, std::pair{c11, c12}};
  if (s21.a != s22.a) return {false, std::pair{c21, c22}};
  if (s11.b != s21.b) return {false, std::pair{c11, c21}};
  if (s12.b != s22.b) return {false, std::pair{c12, c22}};
  return {true, std::nullopt};
}

namespace {

std::string primed(std::string_view base, std::size_t row) {
  static constexpr std::string_view kPrimes[] = {"′", "″", "‴"};
  std::string s(base);
  if (row >= 1 && row <= 3) {
    s += kPrimes[row - 1];
  } else {
    s += "[" + std::to_string(row) + "]";
  }
  return s;
}

}  // namespace

std::string render_table1(const Ledger& ledger) {
  std::ostringstream out;
  out << "theta | phi | system spin state | compact\n";
  std::size_t row = 0;
  for (const SystemSpinState& e : ledger.entries()) {
    ++row;
    const std::string t = primed("θ", row);
    const std::string p = primed("φ", row);
    out << t << " = " << format_double(e.context.theta.radians()) << " | " << p << " = "
        << format_double(e.context.phi.radians()) << " | |" << t << ',' << symbol(e.state.a)
        << "; " << p << ',' << symbol(e.state.b) << "⟩ | " << compact(e.state) << '\n';
  }
  return out.str();
}

std::string render_table1_csv(const Ledger& ledger) {
  std::ostringstream out;
  out << "theta_rad,phi_rad,state\n";
  for (const SystemSpinState& e : ledger.entries()) {
    out << format_double(e.context.theta.radians()) << ',' << format_double(e.context.phi.radians())
        << ',' << ascii_symbol(e.state.a) << ascii_symbol(e.state.b) << '\n';
  }
  return out.str();
}

}  // namespace eprb
