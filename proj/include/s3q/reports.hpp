// Copyright 2026 The s3q Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Verification suites behind the command-line driver and their report rows.
// CSV columns: suite, check_id, computed_re, computed_im, expected_re,
// expected_im, abs_err, tol, pass, provenance.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "s3q/types.hpp"

namespace s3q {

enum class Provenance { Paper, Derived, Trivial };
const char* provenance_name(Provenance p);

struct ReportRow {
  std::string suite, check_id;
  cplx computed, expected;
  double abs_err = 0.0, tol = 0.0;
  bool pass = false;
  Provenance provenance = Provenance::Derived;
};

class Report {
 public:
  /// pass iff |computed - expected| <= tol.
  void add(const std::string& suite, const std::string& id, cplx computed, cplx expected, double tol,
           Provenance prov);
  const std::vector<ReportRow>& rows() const { return rows_; }
  bool all_pass() const;
  std::string to_csv() const;
  std::string to_json() const;
  void append(const Report& other);

 private:
  std::vector<ReportRow> rows_;
};

struct RunConfig {
  PhysicalParams params;
  int nmax = 3;
  std::map<std::string, double> tol;  ///< per-suite override of every row tolerance
  std::string out;                    ///< report path; empty: <dir>/<command>.<format>
  std::string format = "csv";
  unsigned seed = 12345;
  double time = 1.0;  ///< evolution time for the evolve suite

  /// Throws DomainError on nmax outside [0, 8], non-positive tolerances or an unknown format.
  void validate() const;
  double tol_for(const std::string& suite, double fallback) const;
};

/// Fields params{R, hbar, mass}, nmax, tol{suite: value}, out, format, seed, time; absent keys keep base.
RunConfig run_config_from_json(const std::string& text, const RunConfig& base = {});

const std::vector<std::string>& suite_names();
/// Runs one suite; unknown names are a DomainError.
Report run_suite(const std::string& command, const RunConfig& cfg);

/// cfg.out if set, else $S3Q_OUTPUT_DIR (or ".") / <command>.<format>.
std::string report_path(const std::string& command, const RunConfig& cfg);

}  // namespace s3q
