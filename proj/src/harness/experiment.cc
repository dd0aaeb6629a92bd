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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "eprb/lhv.h"
#include "eprb/rng.h"

namespace eprb {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::quantum: return "quantum";
    case Model::realist: return "realist";
    case Model::lhv: return "lhv";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view s) {
  if (s == "quantum") return Model::quantum;
  if (s == "realist") return Model::realist;
  if (s == "lhv") return Model::lhv;
  return std::nullopt;
}

std::string_view model_rules(Model m) {
  switch (m) {
    case Model::quantum:
      return "direct sampling of the singlet joint distribution";
    case Model::realist:
      return "fresh splitmix64 ledger over all run contexts per trial, measured at the pair";
    case Model::lhv:
      return "A=sign(cos(theta-lambda)), B=-sign(cos(phi-lambda)), sign(0)=+1, lambda~U[0,2pi)";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  return std::nullopt;
}

std::string_view to_string(Fault f) {
  return f == Fault::none ? "none" : "correlation-sign";
}

std::optional<Fault> parse_fault(std::string_view s) {
  if (s == "none") return Fault::none;
  if (s == "correlation-sign") return Fault::correlation_sign;
  return std::nullopt;
}

std::string_view to_string(ChshSide s) {
  return s == ChshSide::quantum_like ? "quantum_like" : "local_bounded";
}

std::optional<ChshSide> parse_chsh_side(std::string_view s) {
  if (s == "quantum_like") return ChshSide::quantum_like;
  if (s == "local_bounded") return ChshSide::local_bounded;
  return std::nullopt;
}

double Tolerances::effective_no_signaling_tol(std::uint64_t trials) const {
  if (no_signaling_tol) return *no_signaling_tol;
  return std::max(0.005, 2.5 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(trials, 1))));
}

std::array<Angle, 4> default_chsh_angles() {
  return {normalize_angle(0.0), normalize_angle(kPi / 2), normalize_angle(kPi / 4),
          normalize_angle(3 * kPi / 4)};
}

bool RunConfig::same_payload(const RunConfig& other) const {
  return model == other.model && chsh_angles == other.chsh_angles &&
         extra_contexts == other.extra_contexts && trials_per_pair == other.trials_per_pair &&
         seed == other.seed && format == other.format && tolerances == other.tolerances &&
         fault == other.fault;
}

ContextSet run_contexts(const RunConfig& config) {
  const auto& [a, a2, b, b2] = config.chsh_angles;
  std::vector<Context> contexts = {{a, b}, {a, b2}, {a2, b}, {a2, b2}};
  contexts.insert(contexts.end(), config.extra_contexts.begin(), config.extra_contexts.end());
  return ContextSet(std::move(contexts));
}

JointDistribution theoretical_distribution(Model model, Context c) {
  return model == Model::lhv ? sign_model_distribution(c.theta, c.phi)
                             : joint_distribution(c.theta, c.phi);
}

double theoretical_correlation(Model model, Context c) {
  return model == Model::lhv ? lhv_correlation(c.theta, c.phi, Analytic{})
                             : correlation(c.theta, c.phi);
}

namespace {

CountTable sample_range(Model model, const std::shared_ptr<const ContextSet>& contexts,
                        std::size_t pair_index, std::uint64_t begin, std::uint64_t end,
                        std::uint64_t pair_key, Fault fault) {
  const ContextSet& set = *contexts;
  const Context ctx = set[pair_index];
  const JointDistribution& dist = set.distribution(pair_index);
  const FactorizableModel local = model == Model::lhv ? sign_model() : FactorizableModel{};

  CountTable counts;
  for (std::uint64_t t = begin; t < end; ++t) {
    const std::uint64_t key = derive_key(pair_key, t);
    JointOutcome o;
    switch (model) {
      case Model::quantum: {
        SplitMix64 rng(key);
        o = sample_cell(dist, rng.uniform());
        break;
      }
      case Model::realist:
        o = measure(generate_ledger(contexts, key), ctx);
        break;
      case Model::lhv: {
        SplitMix64 rng(key);
        o = local.outcomes(local.lambda_law(rng), ctx.theta, ctx.phi);
        break;
      }
    }
    if (fault == Fault::correlation_sign) o.b = flip(o.b);
    counts.add(o);
  }
  return counts;
}

}  // namespace

CountTable sample_counts(Model model, const std::shared_ptr<const ContextSet>& contexts,
                         std::size_t pair_index, std::uint64_t trials, std::uint64_t seed,
                         unsigned workers, Fault fault) {
  if (pair_index >= contexts->size()) throw std::out_of_range("sample_counts: pair index");
  const std::uint64_t pair_key = derive_key(seed, pair_index);
  const std::uint64_t n_workers =
      std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(trials, 1));
  if (n_workers == 1) {
    return sample_range(model, contexts, pair_index, 0, trials, pair_key, fault);
  }

  std::vector<CountTable> partial(n_workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(n_workers);
    for (std::uint64_t w = 0; w < n_workers; ++w) {
      const std::uint64_t begin = trials * w / n_workers;
      const std::uint64_t end = trials * (w + 1) / n_workers;
      threads.emplace_back([&, w, begin, end] {
        partial[w] = sample_range(model, contexts, pair_index, begin, end, pair_key, fault);
      });
    }
  }
  CountTable total;
  for (const CountTable& c : partial) total += c;
  return total;
}

Report run_experiment(const RunConfig& config) {
  if (config.trials_per_pair == 0) {
    throw std::invalid_argument("trials_per_pair must be >= 1");
  }
  const auto contexts = std::make_shared<const ContextSet>(run_contexts(config));

  Report report;
  report.config = config;
  report.pairs.reserve(contexts->size());
  for (std::size_t i = 0; i < contexts->size(); ++i) {
    const Context ctx = (*contexts)[i];
    PairReport pair;
    pair.context = ctx;
    pair.counts = sample_counts(config.model, contexts, i, config.trials_per_pair, config.seed,
                                config.workers, config.fault);
    pair.freq = empirical_distribution(pair.counts);
    pair.expected = theoretical_distribution(config.model, ctx);
    pair.chi2 = chi_square_gof(pair.counts, pair.expected);
    pair.e_hat = empirical_correlation(pair.counts);
    pair.e_theory = theoretical_correlation(config.model, ctx);
    report.pairs.push_back(pair);
  }

  const auto& p = report.pairs;
  const ChshEstimate s = chsh_value(p[0].e_hat, p[1].e_hat, p[2].e_hat, p[3].e_hat,
                                    config.chsh_angles);
  report.chsh = {s.s_value, s.std_error,
                 p[0].e_theory - p[1].e_theory + p[2].e_theory + p[3].e_theory,
                 config.chsh_angles};

  const double ns_tol = config.tolerances.effective_no_signaling_tol(config.trials_per_pair);
  bool gof = true;
  bool ns = true;
  for (const PairReport& pr : report.pairs) {
    gof = gof && pr.chi2.p_value > config.tolerances.gof_alpha;
    for (Party party : {Party::first, Party::second}) {
      ns = ns && std::abs(empirical_marginal_plus(pr.counts, party) - 0.5) <= ns_tol;
    }
  }
  report.verdicts.gof_pass = gof;
  report.verdicts.no_signaling_pass = ns;
  report.verdicts.chsh_side =
      std::abs(report.chsh.s_hat) - config.tolerances.chsh_sigmas * report.chsh.s_err > 2.0
          ? ChshSide::quantum_like
          : ChshSide::local_bounded;
  return report;
}

}  // namespace eprb
