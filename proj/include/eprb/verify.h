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

#ifndef EPRB_VERIFY_H
#define EPRB_VERIFY_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eprb/experiment.h"

namespace eprb {

struct VerifyOptions {
  /// N = 1e4 per sampled quantity with tolerances widened by 10x.
  bool quick = false;
  unsigned workers = 1;
  Fault fault = Fault::none;
  std::uint64_t seed = 20261014;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Acceptance checks, in order: joint distribution reproduction,
/// correlation law, CHSH separation, realist/quantum equivalence,
/// no-signaling, factorizability witness, chi-square oracle, determinism,
/// invariant suites. Each result line is written to `log` as it finishes
/// when `log` is non-null.
std::vector<CheckResult> run_verification(const VerifyOptions& options, std::ostream* log);

std::string format_check(const CheckResult& r);

struct PropertyResult {
  std::string name;
  std::uint64_t cases = 0;
  bool passed = true;
  std::string failure;
};

/// Randomized invariant checks for every module; each property draws
/// `cases` inputs from a std::mt19937_64 seeded with `seed`.
std::vector<PropertyResult> run_property_suites(std::uint64_t seed, std::uint64_t cases);

/// Probability that a ledger sampled from the singlet law on `grid` has
/// the product form, by enumerating all 4^4 ledgers and all 16 candidate
/// (f, g) pairs.
double enumerate_decomposable_probability(const Grid& grid);

}  // namespace eprb

#endif  // EPRB_VERIFY_H
