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

#include "eprb/verify.h"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eprb/cli.h"
#include "eprb/lhv.h"
#include "eprb/quantum.h"
#include "eprb/realist.h"
#include "eprb/stats.h"

namespace eprb {

namespace {

// Sample sizes and the tolerance multiplier for one verification pass.
struct Scale {
  std::uint64_t big_n;           // 1e6: distribution, correlation, CHSH, no-signaling
  std::uint64_t equivalence_n;   // 1e5 per sample
  std::uint64_t equivalence_seeds;
  std::uint64_t witness_ledgers;  // 1e5
  std::uint64_t determinism_n;
  double widen;
  bool enforce_runtime;
};

Scale scale_for(const VerifyOptions& o) {
  if (o.quick) return {10000, 10000, 5, 10000, 10000, 10.0, false};
  return {1000000, 100000, 20, 100000, 100000, 1.0, true};
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::shared_ptr<const ContextSet> difference_contexts(const std::vector<double>& deltas) {
  std::vector<Context> contexts;
  for (double d : deltas) contexts.push_back({normalize_angle(d), normalize_angle(0.0)});
  return std::make_shared<const ContextSet>(std::move(contexts));
}

CheckResult joint_distribution_check(const VerifyOptions& o, const Scale& sc) {
  Stopwatch timer;
  const std::vector<double> deltas = {0.0, kPi / 6, kPi / 4, kPi / 2, 2 * kPi / 3, kPi};
  const auto contexts = difference_contexts(deltas);
  const double cell_tol = 0.002 * sc.widen;
  double worst_analytic = 0.0;
  double worst_mc = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double s = std::sin(deltas[i] / 2.0);
    const double c = std::cos(deltas[i] / 2.0);
    const std::array<double, 4> oracle = {0.5 * s * s, 0.5 * c * c, 0.5 * c * c, 0.5 * s * s};
    const JointDistribution analytic = joint_distribution((*contexts)[i].theta, (*contexts)[i].phi);
    const JointDistribution mc = empirical_distribution(
        sample_counts(Model::quantum, contexts, i, sc.big_n, derive_key(o.seed, 1), o.workers, o.fault));
    for (std::size_t k = 0; k < 4; ++k) {
      worst_analytic = std::max(worst_analytic, std::abs(analytic[k] - oracle[k]));
      worst_mc = std::max(worst_mc, std::abs(mc[k] - oracle[k]));
    }
  }
  const double t = timer.seconds();
  const bool ok = worst_analytic <= kAnalyticTolerance && worst_mc <= cell_tol &&
                  (!sc.enforce_runtime || t < 10.0);
  return {"joint_distribution_reproduction", ok,
          "max analytic err " + fmt(worst_analytic) + " (tol 1e-12), max MC cell err " +
              fmt(worst_mc) + " (tol " + fmt(cell_tol) + ", N=" + std::to_string(sc.big_n) +
              "), " + fmt(t) + "s (limit 10s)",
          t};
}

CheckResult correlation_law_check(const VerifyOptions& o, const Scale& sc) {
  Stopwatch timer;
  std::vector<double> deltas;
  for (int k = 0; k < 12; ++k) deltas.push_back(k * kPi / 11.0);
  const auto contexts = difference_contexts(deltas);
  const double tol = 0.004 * sc.widen;
  double worst = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const CountTable counts =
        sample_counts(Model::quantum, contexts, i, sc.big_n, derive_key(o.seed, 2), o.workers, o.fault);
    worst = std::max(worst, std::abs(empirical_correlation(counts).value + std::cos(deltas[i])));
  }
  const double t = timer.seconds();
  const bool ok = worst <= tol && (!sc.enforce_runtime || t < 30.0);
  return {"correlation_law", ok,
          "max |E_hat + cos(d)| " + fmt(worst) + " over 12 differences in [0, pi] (tol " + fmt(tol) +
              "), " + fmt(t) + "s (limit 30s)",
          t};
}

struct ModelRuns {
  Report quantum;
  Report realist;
  Report lhv;
  double seconds = 0.0;
};

ModelRuns run_models(const VerifyOptions& o, const Scale& sc) {
  Stopwatch timer;
  RunConfig c;
  c.trials_per_pair = sc.big_n;
  c.workers = o.workers;
  c.fault = o.fault;
  ModelRuns runs;
  c.model = Model::quantum;
  c.seed = derive_key(o.seed, 3);
  runs.quantum = run_experiment(c);
  c.model = Model::realist;
  c.seed = derive_key(o.seed, 4);
  runs.realist = run_experiment(c);
  c.model = Model::lhv;
  c.seed = derive_key(o.seed, 5);
  runs.lhv = run_experiment(c);
  runs.seconds = timer.seconds();
  return runs;
}

CheckResult chsh_check(const ModelRuns& runs, const Scale& sc) {
  const double target = -2.0 * std::numbers::sqrt2;
  const double tol = 0.01 * sc.widen;
  const auto a = default_chsh_angles();
  const auto e = [](Angle x, Angle y) { return lhv_correlation(x, y, Analytic{}); };
  const double lhv_analytic = e(a[0], a[2]) - e(a[0], a[3]) + e(a[1], a[2]) + e(a[1], a[3]);

  const double sq = runs.quantum.chsh.s_hat;
  const double sr = runs.realist.chsh.s_hat;
  const double sl = runs.lhv.chsh.s_hat;
  const double gap = std::abs(sq) - std::abs(sl);
  const bool disjoint = std::abs(sq) - 3 * runs.quantum.chsh.s_err > std::abs(sl) + 3 * runs.lhv.chsh.s_err;
  const bool ok = std::abs(sq - target) <= tol && std::abs(sr - target) <= tol &&
                  std::abs(lhv_analytic + 2.0) <= kAnalyticTolerance && std::abs(sl + 2.0) <= tol &&
                  gap > 0.7 && disjoint && (!sc.enforce_runtime || runs.seconds < 60.0);
  return {"chsh_separation", ok,
          "S_quantum " + fmt(sq) + ", S_realist " + fmt(sr) + " (target -2.82843 +- " + fmt(tol) +
              "), S_lhv analytic " + fmt(lhv_analytic) + ", S_lhv MC " + fmt(sl) +
              ", |S_q|-|S_lhv| " + fmt(gap) + (disjoint ? ", 3-sigma disjoint" : ", 3-sigma overlap") +
              ", " + fmt(runs.seconds) + "s (limit 60s)",
          runs.seconds};
}

CheckResult no_signaling_check(const ModelRuns& runs, const Scale& sc) {
  const double tol = 0.005 * sc.widen;
  double worst = 0.0;
  for (const Report* r : {&runs.quantum, &runs.realist, &runs.lhv}) {
    for (const PairReport& p : r->pairs) {
      for (Party party : {Party::first, Party::second}) {
        worst = std::max(worst, std::abs(empirical_marginal_plus(p.counts, party) - 0.5));
      }
    }
  }
  return {"no_signaling", worst <= tol,
          "max |P(+) - 0.5| " + fmt(worst) + " over 3 models x 4 pairs x 2 parties (tol " + fmt(tol) + ")",
          0.0};
}

CheckResult equivalence_check(const VerifyOptions& o, const Scale& sc) {
  Stopwatch timer;
  RunConfig c;
  const auto contexts = std::make_shared<const ContextSet>(run_contexts(c));
  std::array<int, 4> failures{};
  double min_p = 1.0;
  for (std::uint64_t k = 0; k < sc.equivalence_seeds; ++k) {
    const std::uint64_t seed_q = derive_key(o.seed, 6, 2 * k);
    const std::uint64_t seed_r = derive_key(o.seed, 6, 2 * k + 1);
    for (std::size_t i = 0; i < 4; ++i) {
      const CountTable q = sample_counts(Model::quantum, contexts, i, sc.equivalence_n, seed_q, o.workers, o.fault);
      const CountTable r = sample_counts(Model::realist, contexts, i, sc.equivalence_n, seed_r, o.workers, o.fault);
      const double p = chi_square_two_sample(q, r).p_value;
      min_p = std::min(min_p, p);
      if (p <= 0.01) ++failures[i];
    }
  }
  const int worst = *std::ranges::max_element(failures);
  const double t = timer.seconds();
  return {"realist_quantum_equivalence", worst <= 1,
          "two-sample chi-square p <= 0.01 in " + std::to_string(failures[0]) + "/" +
              std::to_string(failures[1]) + "/" + std::to_string(failures[2]) + "/" +
              std::to_string(failures[3]) + " of " + std::to_string(sc.equivalence_seeds) +
              " seeds per pair (allowed 1), min p " + fmt(min_p) + ", N=" +
              std::to_string(sc.equivalence_n),
          t};
}

CheckResult witness_check(const VerifyOptions& o, const Scale& sc) {
  Stopwatch timer;
  const auto a = default_chsh_angles();
  const Grid grid{a[0], a[1], a[2], a[3]};
  const auto cells = grid.contexts();
  const auto contexts = std::make_shared<const ContextSet>(std::vector<Context>(cells.begin(), cells.end()));
  const double oracle = enumerate_decomposable_probability(grid);
  std::uint64_t decomposable = 0;
  for (std::uint64_t i = 0; i < sc.witness_ledgers; ++i) {
    const Ledger ledger = generate_ledger(contexts, derive_key(o.seed, 7, i));
    decomposable += factorizability_witness(ledger, grid).decomposable ? 1 : 0;
  }
  const double fraction = static_cast<double>(decomposable) / static_cast<double>(sc.witness_ledgers);
  const double tol = 0.01 * sc.widen;
  return {"factorizability_witness", std::abs(fraction - oracle) <= tol,
          "decomposable fraction " + fmt(fraction) + " vs enumeration " + fmt(oracle) + " (tol " +
              fmt(tol) + ", " + std::to_string(sc.witness_ledgers) + " ledgers)",
          timer.seconds()};
}

// Closed form for three degrees of freedom.
double chi_square_sf_3dof(double x) {
  return std::erfc(std::sqrt(x / 2.0)) + std::sqrt(2.0 * x / kPi) * std::exp(-x / 2.0);
}

CheckResult chi_square_oracle_check() {
  const double p1 = chi_square_sf(7.815, 3);
  const double p2 = chi_square_sf(20.0, 3);
  const double o1 = chi_square_sf_3dof(7.815);
  const double o2 = chi_square_sf_3dof(20.0);
  const bool ok = std::abs(p1 - 0.05) <= 1e-3 && std::abs(p2 - 1.7e-4) <= 0.1 * 1.7e-4 &&
                  std::abs(p1 - o1) <= 1e-10 * o1 && std::abs(p2 - o2) <= 1e-10 * o2;
  return {"chi_square_oracle", ok,
          "sf(7.815, 3) = " + fmt(p1) + " (want 0.05 +- 1e-3), sf(20, 3) = " + fmt(p2) +
              " (want 1.7e-4 +- 10%), closed-form 3-dof oracle " + fmt(o1) + ", " + fmt(o2),
          0.0};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckResult determinism_check(const VerifyOptions& o, const Scale& sc) {
  Stopwatch timer;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("eprb-verify-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  bool ok = true;
  std::string detail;
  for (const char* model : {"quantum", "realist", "lhv"}) {
    for (const char* format : {"json", "csv"}) {
      std::string bytes[2];
      int status[2];
      for (int run = 0; run < 2; ++run) {
        const fs::path out = dir / (std::string(model) + "-" + format + "-" + std::to_string(run));
        std::ostringstream sink;
        status[run] = run_cli({"simulate", "--model", model, "--format", format, "--trials",
                               std::to_string(sc.determinism_n), "--seed", std::to_string(o.seed),
                               "--workers", run == 0 ? "1" : "8", "--out", out.string()},
                              sink, sink);
        bytes[run] = slurp(out);
      }
      const bool same = status[0] == 0 && status[1] == 0 && !bytes[0].empty() && bytes[0] == bytes[1];
      ok = ok && same;
      if (!same) detail += std::string(model) + "/" + format + " differs; ";
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (ok) detail = "simulate at 1 and 8 workers byte-identical for 3 models x {json, csv}";
  return {"determinism", ok, detail, timer.seconds()};
}

CheckResult invariant_suites_check(const VerifyOptions& o) {
  Stopwatch timer;
  const auto results = run_property_suites(o.seed, 1000);
  std::string failed;
  std::uint64_t min_cases = ~0ULL;
  for (const PropertyResult& r : results) {
    min_cases = std::min(min_cases, r.cases);
    if (!r.passed) failed += r.name + " (" + r.failure + "); ";
  }
  return {"invariant_suites", failed.empty(),
          failed.empty() ? std::to_string(results.size()) + " properties, >= " +
                               std::to_string(min_cases) + " cases each"
                         : failed,
          timer.seconds()};
}

}  // namespace

double enumerate_decomposable_probability(const Grid& grid) {
  const auto cells = grid.contexts();
  double total = 0.0;
  for (std::size_t code = 0; code < 256; ++code) {
    std::array<JointOutcome, 4> states;
    double weight = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      states[k] = cell_outcome((code >> (2 * k)) & 3);
      weight *= joint_distribution(cells[k].theta, cells[k].phi).probability(states[k]);
    }
    bool product_form = false;
    for (std::size_t fg = 0; fg < 16 && !product_form; ++fg) {
      const auto bit = [fg](int i) { return (fg >> i) & 1 ? Outcome::minus : Outcome::plus; };
      const std::array<JointOutcome, 4> want = {
          JointOutcome{bit(0), bit(2)}, JointOutcome{bit(0), bit(3)},
          JointOutcome{bit(1), bit(2)}, JointOutcome{bit(1), bit(3)}};
      product_form = states == want;
    }
    if (product_form) total += weight;
  }
  return total;
}

std::string format_check(const CheckResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + r.name + ": " + r.detail;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options, std::ostream* log) {
  const Scale sc = scale_for(options);
  std::vector<CheckResult> results;
  const auto record = [&](CheckResult r) {
    if (log) *log << format_check(r) << std::endl;
    results.push_back(std::move(r));
  };

  record(joint_distribution_check(options, sc));
  record(correlation_law_check(options, sc));
  const ModelRuns runs = run_models(options, sc);
  record(chsh_check(runs, sc));
  record(equivalence_check(options, sc));
  record(no_signaling_check(runs, sc));
  record(witness_check(options, sc));
  record(chi_square_oracle_check());
  record(determinism_check(options, sc));
  record(invariant_suites_check(options));
  return results;
}

}  // namespace eprb
