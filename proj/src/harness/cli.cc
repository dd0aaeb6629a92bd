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

#include "eprb/cli.h"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "eprb/lhv.h"
#include "eprb/report_io.h"
#include "eprb/verify.h"

namespace eprb {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Angle angle_or_usage(std::string_view text) {
  try {
    return parse_angle(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::array<Angle, 4> parse_angle_list(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) {
    throw UsageError("--angles expects 4 comma-separated angles a,a',b,b' (got " +
                     std::to_string(parts.size()) + ")");
  }
  std::array<Angle, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = angle_or_usage(parts[i]);
  return out;
}

std::vector<Context> parse_contexts_csv(std::string_view text) {
  std::vector<Context> contexts;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() != 2 || fields[0].find("theta") == std::string_view::npos ||
          fields[1].find("phi") == std::string_view::npos) {
        throw UsageError("contexts file: expected header 'theta,phi'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw UsageError("contexts file line " + std::to_string(line_no) + ": expected theta,phi");
    }
    contexts.push_back({angle_or_usage(fields[0]), angle_or_usage(fields[1])});
  }
  if (!header_seen) throw UsageError("contexts file: expected header 'theta,phi'");
  return contexts;
}

std::vector<Context> read_contexts_file(const std::filesystem::path& path) {
  return parse_contexts_csv(read_text_file(path));
}

namespace {

using Json = nlohmann::json;

Angle json_angle(const Json& v) {
  if (v.is_number()) return normalize_angle(v.get<double>());
  if (v.is_string()) return angle_or_usage(v.get<std::string>());
  throw UsageError("config: angle must be a number or a string");
}

void apply_config_file(RunConfig& c, const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "model") {
        const auto m = parse_model(v.get<std::string>());
        if (!m) throw UsageError("config: unknown model '" + v.get<std::string>() + "'");
        c.model = *m;
      } else if (key == "angles") {
        if (v.is_string()) {
          c.chsh_angles = parse_angle_list(v.get<std::string>());
        } else {
          if (!v.is_array() || v.size() != 4) throw UsageError("config: angles needs 4 entries");
          for (std::size_t i = 0; i < 4; ++i) c.chsh_angles[i] = json_angle(v[i]);
        }
      } else if (key == "contexts") {
        if (v.is_string()) {
          c.extra_contexts = read_contexts_file(v.get<std::string>());
        } else {
          c.extra_contexts.clear();
          for (const Json& pair : v) {
            if (!pair.is_array() || pair.size() != 2) {
              throw UsageError("config: each context must be [theta, phi]");
            }
            c.extra_contexts.push_back({json_angle(pair[0]), json_angle(pair[1])});
          }
        }
      } else if (key == "trials") {
        c.trials_per_pair = v.get<std::uint64_t>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "format") {
        const auto f = parse_output_format(v.get<std::string>());
        if (!f) throw UsageError("config: unknown format '" + v.get<std::string>() + "'");
        c.format = *f;
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "workers") {
        c.workers = v.get<unsigned>();
      } else if (key == "gof_alpha") {
        c.tolerances.gof_alpha = v.get<double>();
      } else if (key == "no_signaling_tol") {
        c.tolerances.no_signaling_tol = v.get<double>();
      } else if (key == "chsh_sigmas") {
        c.tolerances.chsh_sigmas = v.get<double>();
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config: wrong value type: ") + e.what());
  }
}

// Runs a CLI11 parse over `args` and converts its errors to UsageError.
// Returns false when help was requested.
bool parse_app(CLI::App& app, const std::vector<std::string>& args, std::ostream& out) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::ExtrasError& e) {
    // CLI11 reports "The following arguments were not expected: --x".
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw UsageError("unknown flag or argument:" +
                     (colon == std::string::npos ? " " + what : what.substr(colon + 1)));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return true;
}

struct SimulateFlags {
  std::string model;
  bool quantum = false;
  bool realist = false;
  bool lhv = false;
  std::string angles;
  std::string contexts;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  std::string config;
  std::string sidecar;
  unsigned workers = 1;
  double gof_alpha = 0.0;
  double ns_tol = 0.0;
  double chsh_sigmas = 0.0;
  std::string fault;
};

void add_simulate_options(CLI::App& app, SimulateFlags& f) {
  app.add_option("--model", f.model, "quantum | realist | lhv (default quantum)");
  app.add_flag("--quantum", f.quantum, "Shorthand for --model quantum");
  app.add_flag("--realist", f.realist, "Shorthand for --model realist");
  app.add_flag("--lhv", f.lhv, "Shorthand for --model lhv");
  app.add_option("--angles", f.angles, "a,a',b,b' (default 0,pi/2,pi/4,3pi/4)");
  app.add_option("--contexts", f.contexts, "Extra contexts, CSV with header theta,phi");
  app.add_option("--trials", f.trials, "Trials per angle pair (default 100000)");
  app.add_option("--seed", f.seed, "64-bit seed (default 1)");
  app.add_option("--format", f.format, "json | csv (default json)");
  app.add_option("--out", f.out, "Output path (default stdout)");
  app.add_option("--config", f.config, "JSON config file; flags override it");
  app.add_option("--workers", f.workers, "Worker threads (does not change results)");
  app.add_option("--sidecar", f.sidecar, "Write provenance metadata (time, host) here");
  app.add_option("--gof-alpha", f.gof_alpha, "Goodness-of-fit threshold (default 1e-3)");
  app.add_option("--ns-tol", f.ns_tol, "No-signaling tolerance (default max(0.005, 2.5/sqrt(N)))");
  app.add_option("--chsh-sigmas", f.chsh_sigmas, "Sigmas for the CHSH verdict (default 3)");
  app.add_option("--inject-fault", f.fault, "none | correlation-sign (mutation testing)");
}

RunConfig build_config(const CLI::App& app, const SimulateFlags& f) {
  RunConfig c;
  if (!f.config.empty()) apply_config_file(c, f.config);

  std::optional<Model> chosen;
  if (app.count("--model")) {
    chosen = parse_model(f.model);
    if (!chosen) throw UsageError("unknown model '" + f.model + "' (quantum | realist | lhv)");
  }
  const std::pair<bool, Model> shorthands[] = {
      {f.quantum, Model::quantum}, {f.realist, Model::realist}, {f.lhv, Model::lhv}};
  for (const auto& [set, m] : shorthands) {
    if (!set) continue;
    if (chosen && *chosen != m) {
      throw UsageError("conflicting model options: " + std::string(to_string(*chosen)) +
                       " and " + std::string(to_string(m)));
    }
    chosen = m;
  }
  if (chosen) c.model = *chosen;

  if (app.count("--angles")) c.chsh_angles = parse_angle_list(f.angles);
  if (app.count("--contexts")) c.extra_contexts = read_contexts_file(f.contexts);
  if (app.count("--trials")) c.trials_per_pair = f.trials;
  if (app.count("--seed")) c.seed = f.seed;
  if (app.count("--format")) {
    const auto fmt = parse_output_format(f.format);
    if (!fmt) throw UsageError("unknown format '" + f.format + "' (json | csv)");
    c.format = *fmt;
  }
  if (app.count("--out")) c.out = f.out;
  if (app.count("--workers")) c.workers = f.workers;
  if (app.count("--sidecar")) c.sidecar = f.sidecar;
  if (app.count("--gof-alpha")) c.tolerances.gof_alpha = f.gof_alpha;
  if (app.count("--ns-tol")) c.tolerances.no_signaling_tol = f.ns_tol;
  if (app.count("--chsh-sigmas")) c.tolerances.chsh_sigmas = f.chsh_sigmas;
  if (app.count("--inject-fault")) {
    const auto fault = parse_fault(f.fault);
    if (!fault) throw UsageError("unknown fault '" + f.fault + "'");
    c.fault = *fault;
  }

  if (c.trials_per_pair == 0) throw UsageError("--trials must be >= 1");
  if (c.workers == 0) throw UsageError("--workers must be >= 1");
  try {
    run_contexts(c);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_sidecar(const RunConfig& c) {
  char host[256] = {};
  gethostname(host, sizeof host - 1);
  nlohmann::ordered_json j;
  j["tool"] = "eprb simulate";
  j["report"] = c.out ? c.out->string() : std::string("-");
  j["created_utc"] = utc_timestamp();
  j["host"] = std::string(host);
  j["workers"] = c.workers;
  write_file(*c.sidecar, j.dump(2) + "\n");
}

void write_output(const std::optional<std::filesystem::path>& path, const std::string& bytes,
                  std::ostream& out) {
  if (path) {
    write_file(*path, bytes);
  } else {
    out << bytes;
  }
}

int cmd_simulate(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Run a seeded experiment and write a report", "eprb simulate"};
  SimulateFlags flags;
  add_simulate_options(app, flags);
  if (!parse_app(app, args, out)) return kExitOk;
  const RunConfig config = build_config(app, flags);
  const Report report = run_experiment(config);
  write_output(config.out, render_report(report, config.format), out);
  if (config.sidecar) write_sidecar(config);
  return kExitOk;
}

int cmd_table1(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Generate one ledger of pre-existing system spin states", "eprb table1"};
  std::string contexts_path;
  std::string angles;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out_path;
  app.add_option("--contexts", contexts_path, "Contexts CSV (default: the four CHSH pairs)");
  app.add_option("--angles", angles, "a,a',b,b' for the default contexts");
  app.add_option("--seed", seed, "64-bit seed (default 1)");
  app.add_option("--format", format, "text | csv (default text)");
  app.add_option("--out", out_path, "Output path (default stdout)");
  if (!parse_app(app, args, out)) return kExitOk;
  if (format != "text" && format != "csv") {
    throw UsageError("unknown format '" + format + "' (text | csv)");
  }

  std::vector<Context> contexts;
  if (!contexts_path.empty()) {
    contexts = read_contexts_file(contexts_path);
  } else {
    RunConfig c;
    if (!angles.empty()) c.chsh_angles = parse_angle_list(angles);
    const ContextSet set = run_contexts(c);
    contexts.assign(set.contexts().begin(), set.contexts().end());
  }
  std::shared_ptr<const ContextSet> set;
  try {
    set = std::make_shared<const ContextSet>(std::move(contexts));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Ledger ledger = generate_ledger(set, seed);
  const std::string bytes = format == "csv" ? render_table1_csv(ledger) : render_table1(ledger);
  write_output(out_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_path),
               bytes, out);
  return kExitOk;
}

int cmd_chsh(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Analytic CHSH value for a model", "eprb chsh"};
  std::string model = "quantum";
  std::string angles;
  app.add_option("--model", model, "quantum | realist | lhv (default quantum)");
  app.add_option("--angles", angles, "a,a',b,b' (default 0,pi/2,pi/4,3pi/4)");
  if (!parse_app(app, args, out)) return kExitOk;
  const auto m = parse_model(model);
  if (!m) throw UsageError("unknown model '" + model + "' (quantum | realist | lhv)");
  const auto chsh_angles = angles.empty() ? default_chsh_angles() : parse_angle_list(angles);
  const auto& [a, a2, b, b2] = chsh_angles;
  const double e[4] = {theoretical_correlation(*m, {a, b}), theoretical_correlation(*m, {a, b2}),
                       theoretical_correlation(*m, {a2, b}), theoretical_correlation(*m, {a2, b2})};
  const double s = e[0] - e[1] + e[2] + e[3];
  out << "model=" << to_string(*m) << '\n'
      << "E(a,b)=" << format_double(e[0]) << '\n'
      << "E(a,b')=" << format_double(e[1]) << '\n'
      << "E(a',b)=" << format_double(e[2]) << '\n'
      << "E(a',b')=" << format_double(e[3]) << '\n'
      << "S=" << format_double(s) << '\n';
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Run the acceptance checks", "eprb verify"};
  VerifyOptions options;
  options.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string fault = "none";
  app.add_flag("--quick", options.quick, "N = 1e4 per quantity with widened tolerances");
  app.add_option("--workers", options.workers, "Worker threads");
  app.add_option("--seed", options.seed, "Base seed for all checks");
  app.add_option("--inject-fault", fault, "none | correlation-sign (mutation testing)");
  if (!parse_app(app, args, out)) return kExitOk;
  const auto f = parse_fault(fault);
  if (!f) throw UsageError("unknown fault '" + fault + "'");
  options.fault = *f;
  if (options.workers == 0) throw UsageError("--workers must be >= 1");

  const auto results = run_verification(options, &out);
  const auto failed = std::ranges::count_if(results, [](const CheckResult& r) { return !r.passed; });
  out << (failed == 0 ? "ALL CHECKS PASSED" : std::to_string(failed) + " CHECK(S) FAILED") << '\n';
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

constexpr std::string_view kUsage =
    "usage: eprb <command> [options]\n"
    "\n"
    "commands:\n"
    "  simulate   run a seeded experiment and write a JSON or CSV report\n"
    "  table1     generate one ledger of pre-existing system spin states\n"
    "  chsh       analytic CHSH value for a model and angles\n"
    "  verify     run the acceptance checks (--quick for a fast pass)\n"
    "\n"
    "Run 'eprb <command> --help' for the options of a command.\n"
    "Angles are radians or pi-fractions: 0, 0.5, pi, -pi/2, 3pi/4, 2*pi/3.\n";

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"simulate"};
  SimulateFlags flags;
  add_simulate_options(app, flags);
  std::ostringstream help;
  if (!parse_app(app, args, help)) throw UsageError("help requested");
  return build_config(app, flags);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return kExitUsage;
  }
  const std::string& command = args.front();
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    if (command == "simulate") return cmd_simulate(rest, out);
    if (command == "table1") return cmd_table1(rest, out);
    if (command == "chsh") return cmd_chsh(rest, out);
    if (command == "verify") return cmd_verify(rest, out);
    if (command == "--help" || command == "-h" || command == "help") {
      out << kUsage;
      return kExitOk;
    }
    err << "eprb: unknown command '" << command << "'\n" << kUsage;
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "eprb " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "eprb " << command << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace eprb
