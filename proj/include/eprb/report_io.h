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

#ifndef EPRB_REPORT_IO_H
#define EPRB_REPORT_IO_H

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eprb/experiment.h"

namespace eprb {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON report. Top-level keys, in order: config, pairs, chsh, verdicts.
/// Each pair: theta, phi, counts{pp,pm,mp,mm}, freq, expected,
/// chi2{stat,p}, e_hat, e_err, e_theory. An infinite chi2 stat is written
/// as null. Doubles use the shortest round-trip representation.
std::string report_to_json(const Report& report);

/// Inverse of report_to_json. Throws std::invalid_argument on schema
/// violations.
Report report_from_json(std::string_view text);

/// Header theta,phi,n_pp,n_pm,n_mp,n_mm,e_hat,e_err,e_theory,chi2,p, one
/// row per pair, then "# S_hat=...,S_err=...,S_theory=...".
std::string report_to_csv(const Report& report);

std::string render_report(const Report& report, OutputFormat format);

/// Writes bytes to `path`, throwing IoError that names the path.
void write_file(const std::filesystem::path& path, std::string_view bytes);

void emit_report(const Report& report, OutputFormat format, const std::filesystem::path& path);

}  // namespace eprb

#endif  // EPRB_REPORT_IO_H
