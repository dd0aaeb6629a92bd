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
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace eprb {

using Json = nlohmann::ordered_json;

namespace {

Json cells_json(const std::array<double, 4>& c) {
  Json j;
  j["pp"] = c[0];
  j["pm"] = c[1];
  j["mp"] = c[2];
  j["mm"] = c[3];
  return j;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["model"] = to_string(c.model);
  j["model_rules"] = model_rules(c.model);
  Json angles = Json::array();
  for (Angle a : c.chsh_angles) angles.push_back(a.radians());
  j["angles"] = angles;
  Json contexts = Json::array();
  for (const Context& ctx : c.extra_contexts) {
    contexts.push_back(Json::array({ctx.theta.radians(), ctx.phi.radians()}));
  }
  j["contexts"] = contexts;
  j["trials_per_pair"] = c.trials_per_pair;
  j["seed"] = c.seed;
  j["format"] = to_string(c.format);
  j["generator"] = SplitMix64::kGeneratorId;
  Json tol;
  tol["gof_alpha"] = c.tolerances.gof_alpha;
  tol["no_signaling_tol"] =
      c.tolerances.no_signaling_tol ? Json(*c.tolerances.no_signaling_tol) : Json(nullptr);
  tol["chsh_sigmas"] = c.tolerances.chsh_sigmas;
  j["tolerances"] = tol;
  j["fault"] = to_string(c.fault);
  return j;
}

[[noreturn]] void schema_error(const std::string& what) {
  throw std::invalid_argument("report schema: " + what);
}

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_number()) schema_error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t unsigned_number(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_number_unsigned()) schema_error(std::string("'") + key + "' must be unsigned");
  return v.get<std::uint64_t>();
}

std::string text(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_string()) schema_error(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

JointDistribution cells_from_json(const Json& j, JointDistribution::Kind kind) {
  return {number(j, "pp"), number(j, "pm"), number(j, "mp"), number(j, "mm"), kind};
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  const auto model = parse_model(text(j, "model"));
  if (!model) schema_error("unknown model");
  c.model = *model;
  const Json& angles = at(j, "angles");
  if (!angles.is_array() || angles.size() != 4) schema_error("angles must have 4 entries");
  for (std::size_t i = 0; i < 4; ++i) c.chsh_angles[i] = normalize_angle(angles[i].get<double>());
  for (const Json& ctx : at(j, "contexts")) {
    if (!ctx.is_array() || ctx.size() != 2) schema_error("context must be [theta, phi]");
    c.extra_contexts.push_back(
        {normalize_angle(ctx[0].get<double>()), normalize_angle(ctx[1].get<double>())});
  }
  c.trials_per_pair = unsigned_number(j, "trials_per_pair");
  c.seed = unsigned_number(j, "seed");
  const auto format = parse_output_format(text(j, "format"));
  if (!format) schema_error("unknown format");
  c.format = *format;
  const Json& tol = at(j, "tolerances");
  c.tolerances.gof_alpha = number(tol, "gof_alpha");
  if (const Json& ns = at(tol, "no_signaling_tol"); !ns.is_null()) {
    c.tolerances.no_signaling_tol = ns.get<double>();
  }
  c.tolerances.chsh_sigmas = number(tol, "chsh_sigmas");
  const auto fault = parse_fault(text(j, "fault"));
  if (!fault) schema_error("unknown fault");
  c.fault = *fault;
  return c;
}

}  // namespace

std::string report_to_json(const Report& report) {
  Json root;
  root["config"] = config_json(report.config);

  Json pairs = Json::array();
  for (const PairReport& p : report.pairs) {
    Json j;
    j["theta"] = p.context.theta.radians();
    j["phi"] = p.context.phi.radians();
    Json counts;
    counts["pp"] = p.counts.n_pp;
    counts["pm"] = p.counts.n_pm;
    counts["mp"] = p.counts.n_mp;
    counts["mm"] = p.counts.n_mm;
    j["counts"] = counts;
    j["freq"] = cells_json(p.freq.cells());
    j["expected"] = cells_json(p.expected.cells());
    Json chi2;
    chi2["stat"] = std::isfinite(p.chi2.statistic) ? Json(p.chi2.statistic) : Json(nullptr);
    chi2["p"] = p.chi2.p_value;
    j["chi2"] = chi2;
    j["e_hat"] = p.e_hat.value;
    j["e_err"] = p.e_hat.std_error;
    j["e_theory"] = p.e_theory;
    pairs.push_back(j);
  }
  root["pairs"] = pairs;

  Json chsh;
  chsh["s_hat"] = report.chsh.s_hat;
  chsh["s_err"] = report.chsh.s_err;
  chsh["s_theory"] = report.chsh.s_theory;
  Json angles = Json::array();
  for (Angle a : report.chsh.angles) angles.push_back(a.radians());
  chsh["angles"] = angles;
  root["chsh"] = chsh;

  Json verdicts;
  verdicts["gof_pass"] = report.verdicts.gof_pass;
  verdicts["no_signaling_pass"] = report.verdicts.no_signaling_pass;
  verdicts["chsh_side"] = to_string(report.verdicts.chsh_side);
  root["verdicts"] = verdicts;

  return root.dump(2) + "\n";
}

Report report_from_json(std::string_view text_in) {
  Json root;
  try {
    root = Json::parse(text_in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
  }
  Report r;
  r.config = config_from_json(at(root, "config"));

  for (const Json& j : at(root, "pairs")) {
    PairReport p;
    p.context = {normalize_angle(number(j, "theta")), normalize_angle(number(j, "phi"))};
    const Json& counts = at(j, "counts");
    p.counts = {unsigned_number(counts, "pp"), unsigned_number(counts, "pm"),
                unsigned_number(counts, "mp"), unsigned_number(counts, "mm")};
    p.freq = cells_from_json(at(j, "freq"), JointDistribution::Kind::empirical);
    p.expected = cells_from_json(at(j, "expected"), JointDistribution::Kind::theoretical);
    const Json& chi2 = at(j, "chi2");
    const Json& stat = at(chi2, "stat");
    p.chi2.statistic =
        stat.is_null() ? std::numeric_limits<double>::infinity() : stat.get<double>();
    p.chi2.p_value = number(chi2, "p");
    // dof is not serialized; it follows from the expected cells.
    int support = 0;
    for (double q : p.expected.cells()) support += q > 0.0 ? 1 : 0;
    p.chi2.dof = std::max(support - 1, 0);
    p.e_hat = {number(j, "e_hat"), number(j, "e_err")};
    p.e_theory = number(j, "e_theory");
    r.pairs.push_back(p);
  }

  const Json& chsh = at(root, "chsh");
  r.chsh.s_hat = number(chsh, "s_hat");
  r.chsh.s_err = number(chsh, "s_err");
  r.chsh.s_theory = number(chsh, "s_theory");
  const Json& angles = at(chsh, "angles");
  if (!angles.is_array() || angles.size() != 4) schema_error("chsh.angles must have 4 entries");
  for (std::size_t i = 0; i < 4; ++i) r.chsh.angles[i] = normalize_angle(angles[i].get<double>());

  const Json& verdicts = at(root, "verdicts");
  r.verdicts.gof_pass = at(verdicts, "gof_pass").get<bool>();
  r.verdicts.no_signaling_pass = at(verdicts, "no_signaling_pass").get<bool>();
  const auto side = parse_chsh_side(text(verdicts, "chsh_side"));
  if (!side) schema_error("unknown chsh_side");
  r.verdicts.chsh_side = *side;
  return r;
}

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  out << "theta,phi,n_pp,n_pm,n_mp,n_mm,e_hat,e_err,e_theory,chi2,p\n";
  for (const PairReport& p : report.pairs) {
    out << format_double(p.context.theta.radians()) << ',' << format_double(p.context.phi.radians())
        << ',' << p.counts.n_pp << ',' << p.counts.n_pm << ',' << p.counts.n_mp << ','
        << p.counts.n_mm << ',' << format_double(p.e_hat.value) << ','
        << format_double(p.e_hat.std_error) << ',' << format_double(p.e_theory) << ','
        << format_double(p.chi2.statistic) << ',' << format_double(p.chi2.p_value) << '\n';
  }
  out << "# S_hat=" << format_double(report.chsh.s_hat)
      << ",S_err=" << format_double(report.chsh.s_err)
      << ",S_theory=" << format_double(report.chsh.s_theory) << '\n';
  return out.str();
}

std::string render_report(const Report& report, OutputFormat format) {
  return format == OutputFormat::json ? report_to_json(report) : report_to_csv(report);
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_report(const Report& report, OutputFormat format, const std::filesystem::path& path) {
  write_file(path, render_report(report, format));
}

}  // namespace eprb
