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
// Command-line driver: runs one verification suite and writes its report.
// Exit status 0 iff every row is within tolerance; 2 on usage or domain errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "s3q/reports.hpp"

int main(int argc, char** argv) {
  using namespace s3q;
  CLI::App app{"Verification suites for the quantum free particle on S^3"};
  std::string command, config_file;
  double radius = 1.0, hbar = 1.0, mass = 1.0, time = 1.0;
  int nmax = 3;
  unsigned seed = 12345;
  std::string out, format = "csv";
  app.add_option("command", command, "verify-kernels | norm-consts | overlaps | ft-roundtrip | spectrum | evolve | group-check")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  app.add_option("--config", config_file, "JSON run configuration; flags override it")->check(CLI::ExistingFile);
  auto* o_r = app.add_option("--radius", radius, "sphere radius R");
  auto* o_h = app.add_option("--hbar", hbar, "reduced Planck constant");
  auto* o_m = app.add_option("--mass", mass, "particle mass");
  auto* o_n = app.add_option("--nmax", nmax, "largest principal quantum number (<= 8)");
  auto* o_s = app.add_option("--seed", seed, "seed of the random suites");
  auto* o_t = app.add_option("--time", time, "evolution time of the evolve suite");
  auto* o_o = app.add_option("--out", out, "report path (default: $S3Q_OUTPUT_DIR/<command>.<format>)");
  auto* o_f = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  std::map<std::string, double> tols;
  for (const std::string& s : suite_names()) app.add_option("--tol-" + s, tols[s], "tolerance override for " + s);
  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = run_config_from_json(ss.str(), cfg);
    }
    if (o_r->count() || o_h->count() || o_m->count())
      cfg.params = PhysicalParams(o_r->count() ? radius : cfg.params.R, o_h->count() ? hbar : cfg.params.hbar,
                                  o_m->count() ? mass : cfg.params.mass);
    if (o_n->count()) cfg.nmax = nmax;
    if (o_s->count()) cfg.seed = seed;
    if (o_t->count()) cfg.time = time;
    if (o_o->count()) cfg.out = out;
    if (o_f->count()) cfg.format = format;
    for (const std::string& s : suite_names())
      if (app.get_option("--tol-" + s)->count()) cfg.tol[s] = tols[s];
    cfg.validate();

    const Report rep = run_suite(command, cfg);
    const std::string path = report_path(command, cfg);
    std::ofstream os(path);
    if (!os) throw DomainError("cannot write " + path);
    os << (cfg.format == "json" ? rep.to_json() : rep.to_csv());
    int failed = 0;
    for (const ReportRow& r : rep.rows())
      if (!r.pass) {
        ++failed;
        std::cerr << "FAIL " << r.suite << " " << r.check_id << " abs_err=" << r.abs_err << " tol=" << r.tol << "\n";
      }
    std::cout << command << ": " << rep.rows().size() - failed << "/" << rep.rows().size() << " checks passed; report "
              << path << "\n";
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
