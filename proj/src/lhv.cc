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

#include "eprb/lhv.h"

#include <stdexcept>

namespace eprb {

HiddenVariable uniform_lambda(SplitMix64& rng) {
  return {normalize_angle(rng.uniform() * kTwoPi)};
}

HiddenVariable sample_lambda(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng(derive_key(seed, index));
  return uniform_lambda(rng);
}

Outcome cos_sign(Angle setting, HiddenVariable lambda) {
  // cos(d) >= 0 exactly on [0, pi/2] and [3pi/2, 2pi); compare the folded
  // difference instead of the rounded cosine.
  const double d = difference(setting, lambda.lambda).radians();
  return (d <= kPi / 2 || d >= 3 * kPi / 2) ? Outcome::plus : Outcome::minus;
}

JointOutcome sign_model_outcomes(HiddenVariable lambda, Angle theta, Angle phi) {
  return {cos_sign(theta, lambda), flip(cos_sign(phi, lambda))};
}

FactorizableModel sign_model() {
  return {
      "sign",
      "A=sign(cos(theta-lambda)), B=-sign(cos(phi-lambda)), sign(0)=+1, lambda~U[0,2pi)",
      [](Angle theta, HiddenVariable l) { return cos_sign(theta, l); },
      [](Angle phi, HiddenVariable l) { return flip(cos_sign(phi, l)); },
      uniform_lambda,
  };
}

double folded_difference(Angle theta, Angle phi) {
  const double d = difference(theta, phi).radians();
  return d > kPi ? kTwoPi - d : d;
}

JointDistribution sign_model_distribution(Angle theta, Angle phi) {
  const double d = folded_difference(theta, phi);
  const double same = d / kTwoPi;
  const double opposite = (kPi - d) / kTwoPi;
  return {same, opposite, opposite, same, JointDistribution::Kind::theoretical};
}

double lhv_correlation(Angle theta, Angle phi, CorrelationMode mode) {
  if (std::holds_alternative<Analytic>(mode)) {
    return -1.0 + 2.0 * folded_difference(theta, phi) / kPi;
  }
  const auto& mc = std::get<MonteCarlo>(mode);
  if (mc.trials == 0) throw std::invalid_argument("lhv_correlation: trials must be >= 1");
  std::int64_t sum = 0;
  for (std::uint64_t i = 0; i < mc.trials; ++i) {
    const JointOutcome o = sign_model_outcomes(sample_lambda(mc.seed, i), theta, phi);
    sum += value(o.a) * value(o.b);
  }
  return static_cast<double>(sum) / static_cast<double>(mc.trials);
}

double lhv_correlation(const FactorizableModel& model, Angle theta, Angle phi,
                       std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("lhv_correlation: trials must be >= 1");
  std::int64_t sum = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 rng(derive_key(seed, i));
    const JointOutcome o = model.outcomes(model.lambda_law(rng), theta, phi);
    sum += value(o.a) * value(o.b);
  }
  return static_cast<double>(sum) / static_cast<double>(trials);
}

}  // namespace eprb
