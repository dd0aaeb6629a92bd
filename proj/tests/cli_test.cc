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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eprb/report_io.h"
#include "gtest/gtest.h"

using namespace eprb;

namespace {

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("eprb_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string usage_message(const std::vector<std::string>& args) {
  try {
    parse_config(args);
  } catch (const UsageError& e) {
    return e.what();
  }
  return "";
}

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST(parse_config, defaults) {
  const RunConfig c = parse_config({});
  EXPECT_EQ(c.model, Model::quantum);
  EXPECT_EQ(c.chsh_angles, default_chsh_angles());
  EXPECT_EQ(c.trials_per_pair, 100000u);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.format, OutputFormat::json);
  EXPECT_FALSE(c.out.has_value());
  EXPECT_EQ(c.fault, Fault::none);
}

TEST(parse_config, angles_are_normalized) {
  const RunConfig c = parse_config({"--angles", "0,pi/2,pi/4,3pi/4", "--trials", "10", "--seed", "9"});
  EXPECT_EQ(c.chsh_angles, default_chsh_angles());
  EXPECT_EQ(c.trials_per_pair, 10u);
  EXPECT_EQ(c.seed, 9u);
  const RunConfig neg = parse_config({"--angles", "-pi/2,2*pi,7,0.5"});
  EXPECT_DOUBLE_EQ(neg.chsh_angles[0].radians(), 3 * kPi / 2);
  EXPECT_EQ(neg.chsh_angles[1].radians(), 0.0);
  EXPECT_NEAR(neg.chsh_angles[2].radians(), 7 - kTwoPi, 1e-15);
}

TEST(parse_config, wrong_arity_names_expected_count) {
  const std::string msg = usage_message({"--angles", "0,pi/2"});
  EXPECT_NE(msg.find("4 comma-separated angles"), std::string::npos) << msg;
  EXPECT_NE(msg.find("got 2"), std::string::npos) << msg;
  EXPECT_THROW(parse_angle_list("0,1,2,3,4"), UsageError);
}

TEST(parse_config, malformed_angle) {
  const std::string msg = usage_message({"--angles", "0,pi/2,pi/x,1"});
  EXPECT_NE(msg.find("pi/x"), std::string::npos) << msg;
}

TEST(parse_config, unknown_flag) {
  const std::string msg = usage_message({"--bogus"});
  EXPECT_EQ(msg.rfind("unknown flag or argument:", 0), 0u) << msg;
  EXPECT_NE(msg.find("--bogus"), std::string::npos) << msg;
}

TEST(parse_config, model_selection) {
  EXPECT_EQ(parse_config({"--lhv"}).model, Model::lhv);
  EXPECT_EQ(parse_config({"--model", "realist"}).model, Model::realist);
  EXPECT_EQ(parse_config({"--realist", "--model", "realist"}).model, Model::realist);
  const std::string msg = usage_message({"--model", "quantum", "--lhv"});
  EXPECT_NE(msg.find("conflicting model options"), std::string::npos) << msg;
  EXPECT_NE(usage_message({"--quantum", "--realist"}).find("conflicting model options"), std::string::npos);
  EXPECT_NE(usage_message({"--model", "classical"}).find("unknown model"), std::string::npos);
}

TEST(parse_config, value_checks) {
  EXPECT_NE(usage_message({"--trials", "0"}), "");
  EXPECT_NE(usage_message({"--workers", "0"}), "");
  EXPECT_NE(usage_message({"--format", "xml"}), "");
  EXPECT_NE(usage_message({"--inject-fault", "nope"}), "");
  EXPECT_EQ(parse_config({"--inject-fault", "correlation-sign"}).fault, Fault::correlation_sign);
}

TEST(parse_config, config_file_then_flag_overrides) {
  TempDir dir;
  write(dir / "c.json",
        R"({"model": "lhv", "angles": [0, "pi/2", "pi/4", "3pi/4"], "trials": 500, "seed": 4,
            "format": "csv", "gof_alpha": 0.01, "contexts": [[0.1, "pi"]]})");
  const RunConfig from_file = parse_config({"--config", (dir / "c.json").string()});
  EXPECT_EQ(from_file.model, Model::lhv);
  EXPECT_EQ(from_file.trials_per_pair, 500u);
  EXPECT_EQ(from_file.seed, 4u);
  EXPECT_EQ(from_file.format, OutputFormat::csv);
  EXPECT_EQ(from_file.tolerances.gof_alpha, 0.01);
  ASSERT_EQ(from_file.extra_contexts.size(), 1u);
  EXPECT_EQ(from_file.extra_contexts[0].phi, normalize_angle(kPi));

  const RunConfig overridden = parse_config({"--config", (dir / "c.json").string(), "--seed", "8", "--quantum"});
  EXPECT_EQ(overridden.seed, 8u);
  EXPECT_EQ(overridden.model, Model::quantum);
  EXPECT_EQ(overridden.trials_per_pair, 500u);

  write(dir / "bad.json", R"({"trails": 5})");
  EXPECT_NE(usage_message({"--config", (dir / "bad.json").string()}).find("unknown key"), std::string::npos);
  write(dir / "broken.json", "{");
  EXPECT_NE(usage_message({"--config", (dir / "broken.json").string()}), "");
  EXPECT_NE(usage_message({"--config", (dir / "missing.json").string()}), "");
}

TEST(parse_contexts_csv, header_comments_and_errors) {
  const auto c = parse_contexts_csv("# extra pairs\ntheta,phi\n0,pi/2\n\n1.5, 3pi/4\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Context{normalize_angle(0), normalize_angle(kPi / 2)}));
  EXPECT_EQ(c[1].theta, normalize_angle(1.5));
  EXPECT_THROW(parse_contexts_csv("0,1\n"), UsageError);
  EXPECT_THROW(parse_contexts_csv("theta,phi\n0\n"), UsageError);
  EXPECT_THROW(parse_contexts_csv("theta,phi\n0,abc\n"), UsageError);
  EXPECT_THROW(read_contexts_file("/nonexistent/contexts.csv"), UsageError);
}

TEST(parse_config, contexts_file) {
  TempDir dir;
  write(dir / "ctx.csv", "theta,phi\n0.3,1.2\n");
  const RunConfig c = parse_config({"--contexts", (dir / "ctx.csv").string()});
  ASSERT_EQ(c.extra_contexts.size(), 1u);
  EXPECT_EQ(c.extra_contexts[0], (Context{normalize_angle(0.3), normalize_angle(1.2)}));
}

TEST(run_cli, simulate_writes_report_file) {
  TempDir dir;
  const auto path = dir / "r.json";
  const CliRun r = run({"simulate", "--lhv", "--trials", "2000", "--seed", "5", "--out", path.string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(r.out, "");
  const Report report = report_from_json(slurp(path));
  EXPECT_EQ(report.config.model, Model::lhv);
  EXPECT_EQ(report.pairs.size(), 4u);

  const CliRun again = run({"simulate", "--lhv", "--trials", "2000", "--seed", "5", "--workers", "4"});
  EXPECT_EQ(again.out, slurp(path));
}

TEST(run_cli, simulate_sidecar_is_separate) {
  TempDir dir;
  const CliRun r = run({"simulate", "--trials", "100", "--format", "csv", "--out", (dir / "r.csv").string(),
                        "--sidecar", (dir / "meta.json").string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(slurp(dir / "meta.json").find("created_utc"), std::string::npos);
  EXPECT_EQ(slurp(dir / "r.csv").find("created_utc"), std::string::npos);
}

TEST(run_cli, usage_errors_exit_one) {
  const CliRun arity = run({"simulate", "--angles", "0,pi/2"});
  EXPECT_EQ(arity.status, kExitUsage);
  EXPECT_NE(arity.err.find("4 comma-separated angles"), std::string::npos) << arity.err;
  EXPECT_EQ(run({"simulate", "--nope"}).status, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(run({}).status, kExitUsage);
  const CliRun io = run({"simulate", "--trials", "10", "--out", "/nonexistent-dir/r.json"});
  EXPECT_EQ(io.status, kExitUsage);
  EXPECT_NE(io.err.find("/nonexistent-dir/r.json"), std::string::npos) << io.err;
}

TEST(run_cli, help_exits_zero) {
  EXPECT_EQ(run({"help"}).status, kExitOk);
  const CliRun h = run({"simulate", "--help"});
  EXPECT_EQ(h.status, kExitOk);
  EXPECT_NE(h.out.find("--trials"), std::string::npos);
}

TEST(run_cli, table1_text_and_csv) {
  const CliRun text = run({"table1", "--seed", "3"});
  ASSERT_EQ(text.status, kExitOk) << text.err;
  EXPECT_EQ(text.out.rfind("theta | phi | system spin state | compact\n", 0), 0u);
  EXPECT_EQ(std::count(text.out.begin(), text.out.end(), '\n'), 5);

  TempDir dir;
  write(dir / "ctx.csv", "theta,phi\n0,0\n1,2\n");
  const CliRun csv = run({"table1", "--contexts", (dir / "ctx.csv").string(), "--format", "csv"});
  ASSERT_EQ(csv.status, kExitOk) << csv.err;
  EXPECT_EQ(csv.out.rfind("theta_rad,phi_rad,state\n0,0,", 0), 0u) << csv.out;
  EXPECT_EQ(run({"table1", "--seed", "3"}).out, text.out);
  EXPECT_EQ(run({"table1", "--format", "html"}).status, kExitUsage);
}

TEST(run_cli, chsh_values) {
  const CliRun q = run({"chsh"});
  ASSERT_EQ(q.status, kExitOk);
  EXPECT_NE(q.out.find("S=-2.828427124746"), std::string::npos) << q.out;
  const CliRun l = run({"chsh", "--model", "lhv"});
  EXPECT_NE(l.out.find("S=-2\n"), std::string::npos) << l.out;
}

TEST(run_cli, verify_quick_and_fault) {
  const CliRun ok = run({"verify", "--quick", "--workers", "2"});
  EXPECT_EQ(ok.status, kExitOk) << ok.out;
  EXPECT_NE(ok.out.find("ALL CHECKS PASSED"), std::string::npos);
  const CliRun bad = run({"verify", "--quick", "--inject-fault", "correlation-sign"});
  EXPECT_EQ(bad.status, kExitVerifyFailed);
  EXPECT_NE(bad.out.find("[FAIL]"), std::string::npos) << bad.out;
}
