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

#include "eprb/report_io.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

using namespace eprb;

namespace {

Report sample_report(Model m = Model::quantum) {
  RunConfig c;
  c.model = m;
  c.trials_per_pair = 5000;
  c.seed = 3;
  c.extra_contexts = {{normalize_angle(0.25), normalize_angle(0.25)}};
  return run_experiment(c);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(report_to_json, round_trips) {
  for (Model m : {Model::quantum, Model::realist, Model::lhv}) {
    const Report r = sample_report(m);
    const std::string text = report_to_json(r);
    const Report back = report_from_json(text);
    EXPECT_EQ(back, r);
    EXPECT_EQ(report_to_json(back), text);
  }
}

TEST(report_to_json, infinite_statistic_is_null_and_round_trips) {
  Report r = sample_report();
  r.pairs[0].chi2.statistic = std::numeric_limits<double>::infinity();
  r.pairs[0].chi2.p_value = 0.0;
  const std::string text = report_to_json(r);
  const auto j = nlohmann::json::parse(text);
  EXPECT_TRUE(j["pairs"][0]["chi2"]["stat"].is_null());
  const Report back = report_from_json(text);
  EXPECT_TRUE(std::isinf(back.pairs[0].chi2.statistic));
  EXPECT_EQ(back, r);
}

TEST(report_to_json, key_order_is_fixed) {
  const auto j = nlohmann::ordered_json::parse(report_to_json(sample_report()));
  std::vector<std::string> top;
  for (const auto& [k, v] : j.items()) top.push_back(k);
  EXPECT_EQ(top, (std::vector<std::string>{"config", "pairs", "chsh", "verdicts"}));
  std::vector<std::string> pair;
  for (const auto& [k, v] : j["pairs"][0].items()) pair.push_back(k);
  EXPECT_EQ(pair, (std::vector<std::string>{"theta", "phi", "counts", "freq", "expected", "chi2",
                                            "e_hat", "e_err", "e_theory"}));
  EXPECT_EQ(j["config"]["generator"], "splitmix64");
  EXPECT_EQ(j["pairs"].size(), 5u);
}

TEST(report_to_json, same_config_same_bytes) {
  EXPECT_EQ(report_to_json(sample_report()), report_to_json(sample_report()));
  EXPECT_EQ(report_to_csv(sample_report()), report_to_csv(sample_report()));
}

TEST(report_from_json, schema_errors) {
  EXPECT_THROW(report_from_json("not json"), std::invalid_argument);
  EXPECT_THROW(report_from_json("[]"), std::invalid_argument);
  EXPECT_THROW(report_from_json(R"({"config": {}})"), std::invalid_argument);
  auto j = nlohmann::ordered_json::parse(report_to_json(sample_report()));
  j["config"]["model"] = "classical";
  EXPECT_THROW(report_from_json(j.dump()), std::invalid_argument);
}

TEST(report_to_csv, header_rows_and_summary) {
  const Report r = sample_report();
  const std::string csv = report_to_csv(r);
  std::istringstream in(csv);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), r.pairs.size() + 2);
  EXPECT_EQ(lines[0], "theta,phi,n_pp,n_pm,n_mp,n_mm,e_hat,e_err,e_theory,chi2,p");
  EXPECT_EQ(lines.back().rfind("# S_hat=", 0), 0u);
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 10) << lines[i];
  }
}

TEST(write_file, unwritable_path_names_the_path) {
  const std::filesystem::path bad = "/nonexistent-dir/eprb/report.json";
  try {
    write_file(bad, "x");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos) << e.what();
  }
}

TEST(emit_report, writes_rendered_bytes) {
  const auto dir = std::filesystem::temp_directory_path() / "eprb_report_io_test";
  std::filesystem::create_directories(dir);
  const Report r = sample_report();
  emit_report(r, OutputFormat::csv, dir / "r.csv");
  EXPECT_EQ(slurp(dir / "r.csv"), report_to_csv(r));
  emit_report(r, OutputFormat::json, dir / "r.json");
  EXPECT_EQ(slurp(dir / "r.json"), report_to_json(r));
  std::filesystem::remove_all(dir);
}
