// Copyright 2026 The qss-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qss: command-line front end for the threshold secret sharing simulator.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qss/analysis.hpp"
#include "qss/report.hpp"
#include "qss/runner.hpp"
#include "qss/scenario.hpp"

namespace {

using namespace qss::cli;

int cmd_run(const std::string& path, const std::string& out_path, std::optional<std::uint64_t> seed,
            const std::string& dump_path) {
  auto sc = load_scenario(path);
  if (seed) sc.seed = *seed;
  const auto rep = run_scenario(sc, !dump_path.empty());
  const auto text = report_json(rep).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw qss::Error("cannot write report to " + out_path);
    out << text;
    std::cout << sc.name << ": " << rep.status;
    if (rep.transcript.final_secret && rep.transcript.final_secret->digit) {
      std::cout << ", final digit " << *rep.transcript.final_secret->digit;
    }
    std::cout << " (exit " << rep.exit_code << ")\n";
  }
  if (!dump_path.empty()) {
    std::ofstream dump(dump_path);
    if (!dump) throw qss::Error("cannot write state dump to " + dump_path);
    dump << rep.final_state_dump;
  }
  if (rep.exit_code == exit_codes::aborted) std::cerr << "qss: protocol aborted\n";
  if (rep.exit_code == exit_codes::consistency_failed) std::cerr << "qss: consistency check failed, rerun required\n";
  return rep.exit_code;
}

int cmd_secrecy(std::size_t k, std::size_t n, std::optional<std::uint64_t> q, std::size_t subset_size) {
  const qss::PrimeField field = q ? qss::PrimeField(*q) : qss::find_modulus(n, 2);
  const qss::SchemeParams params(k, n, field);
  const auto report = qss::secrecy_scan(params, subset_size);
  std::cout << secrecy_json(report).dump(2) << "\n";
  const bool ok = report.max_deviation <= kCheckTolerance && report.max_mixed_distance <= kCheckTolerance;
  return ok ? exit_codes::ok : exit_codes::check_failed;
}

int cmd_sweep(const std::string& pattern, unsigned jobs) {
  const auto rows = sweep(pattern, jobs);
  std::cout << format_sweep(rows);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.pass; });
  return all ? exit_codes::ok : exit_codes::check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum (k,n) threshold secret sharing without a trusted party: protocol simulator"};
  app.set_version_flag("--version", std::string("qss ") + QSS_VERSION);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string dump_path;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run one scenario and write its report");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_path, "Report path (default: stdout)");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--dump", dump_path, "Write the final state dump here");

  std::string pattern;
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every scenario matching a glob");
  sweep_cmd->add_option("glob", pattern, "Scenario glob, e.g. 'scenarios/*.json'")->required();
  sweep_cmd->add_option("--jobs", jobs, "Scenario files run in parallel")->check(CLI::PositiveNumber);

  std::size_t k = 0;
  std::size_t n = 0;
  std::optional<std::uint64_t> q;
  std::size_t subset_size = 0;
  auto* secrecy = app.add_subcommand("secrecy", "Compare reduced states of share subsets across secrets");
  secrecy->add_option("--k", k, "Threshold")->required();
  secrecy->add_option("--n", n, "Number of shares")->required();
  secrecy->add_option("--q", q, "Field size (default: smallest valid prime)");
  secrecy->add_option("--subset-size", subset_size, "Shares per subset (< k)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : exit_codes::input_error;
  }

  try {
    if (*run) return cmd_run(scenario_path, out_path, seed, dump_path);
    if (*sweep_cmd) return cmd_sweep(pattern, jobs);
    if (*secrecy) return cmd_secrecy(k, n, q, subset_size);
  } catch (const std::exception& e) {
    std::cerr << "qss: error: " << e.what() << "\n";
    return exit_codes::input_error;
  }
  return exit_codes::input_error;
}
