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

#ifndef EPRB_LHV_H
#define EPRB_LHV_H

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "eprb/angle.h"
#include "eprb/outcome.h"
#include "eprb/quantum.h"
#include "eprb/rng.h"

namespace eprb {

/// Setting-independent hidden variable shared by both particles.
struct HiddenVariable {
  Angle lambda;
};

/// A local outcome rule sees only its own setting and lambda.
using LocalRule = std::function<Outcome(Angle setting, HiddenVariable)>;
using LambdaLaw = std::function<HiddenVariable(SplitMix64&)>;

/// Bell-local model: A(theta, lambda), B(phi, lambda), lambda ~ law.
/// Neither rule can read the far setting because the signature does not
/// carry it.
struct FactorizableModel {
  std::string name;
  /// Human-readable rule pair, recorded in reports.
  std::string rules;
  LocalRule rule_a;
  LocalRule rule_b;
  LambdaLaw lambda_law;

  JointOutcome outcomes(HiddenVariable lambda, Angle theta, Angle phi) const {
    return {rule_a(theta, lambda), rule_b(phi, lambda)};
  }
};

/// lambda uniform on [0, 2pi) from one draw of `rng`.
HiddenVariable uniform_lambda(SplitMix64& rng);

/// uniform_lambda(SplitMix64(derive_key(seed, index))).
HiddenVariable sample_lambda(std::uint64_t seed, std::uint64_t index);

/// +1 iff cos(setting - lambda) >= 0, so sign(0) = +1.
Outcome cos_sign(Angle setting, HiddenVariable lambda);

/// A = sign(cos(theta - lambda)), B = -sign(cos(phi - lambda)).
JointOutcome sign_model_outcomes(HiddenVariable lambda, Angle theta, Angle phi);

/// The anti-correlated sign model above with uniform lambda.
FactorizableModel sign_model();

/// Closed-form joint law of the sign model: with D = |theta - phi|
/// folded into [0, pi], p_pp = p_mm = D/(2pi), p_pm = p_mp = (pi-D)/(2pi).
JointDistribution sign_model_distribution(Angle theta, Angle phi);

/// |theta - phi| folded into [0, pi].
double folded_difference(Angle theta, Angle phi);

struct Analytic {};
struct MonteCarlo {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};
using CorrelationMode = std::variant<Analytic, MonteCarlo>;

/// Sign-model correlation. Analytic: -1 + 2D/pi. MonteCarlo: average of
/// A*B over lambda_i = sample_lambda(seed, i), i < trials; trials >= 1.
double lhv_correlation(Angle theta, Angle phi, CorrelationMode mode);

/// Monte Carlo correlation for an arbitrary factorizable model.
double lhv_correlation(const FactorizableModel& model, Angle theta, Angle phi,
                       std::uint64_t trials, std::uint64_t seed);

}  // namespace eprb

#endif  // EPRB_LHV_H
