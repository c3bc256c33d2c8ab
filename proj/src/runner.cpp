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

#include "qss/runner.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "qss/report.hpp"

namespace qss::cli {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "?";
}

namespace {

/// Why the closed forms do not describe this run, or empty when they do.
std::string oracle_gap(const Scenario& sc) {
  if (sc.scheme != Scheme::scheme2) return "closed forms describe scheme2 runs";
  for (const auto& p : sc.participants) {
    if (!p.basis_digit()) return "closed forms need basis-state inputs";
    if (p.behavior == Behavior::quitter_silent) return "closed forms assume every participant deals";
  }
  return {};
}

/// The digits the dealers actually encode (a malicious dealer's shift included).
std::vector<std::uint64_t> encoded_digits(const Scenario& sc) {
  std::vector<std::uint64_t> out(sc.n, 0);
  for (const auto& p : sc.participants) {
    std::uint64_t d = *p.basis_digit();
    if (p.behavior == Behavior::malicious_wrong_shares) d = (d + p.shift) % sc.q;
    out[p.id] = d;
  }
  return out;
}

}  // namespace

RunReport run_scenario(const Scenario& sc, bool keep_dump) {
  const auto start = std::chrono::steady_clock::now();
  set_kernel_threads(1);
  RunReport rep;
  rep.scenario = sc;
  const auto cfg = sc.config();

  const std::string gap = oracle_gap(sc);
  std::vector<OracleCheck> oracle;
  for (auto stage : sc.checks.oracle_stages) oracle.push_back({stage, CheckStatus::skipped, 0.0, gap});

  StageObserver observer = [&](Stage stage, const SparseState& state) {
    rep.peak_terms = std::max(rep.peak_terms, state.size());
    if (!gap.empty()) return;
    for (auto& c : oracle) {
      if (c.stage != stage) continue;
      try {
        // With every participant dealing, the default subset is 0..k-1, which
        // is also the oracle's default.
        const auto want = oracle_state({stage, cfg.params(), encoded_digits(sc), sc.subset.value_or(std::vector<std::size_t>{})});
        c.max_deviation = phase_aligned_distance(state, want);
        c.status = c.max_deviation <= kCheckTolerance ? CheckStatus::pass : CheckStatus::fail;
        c.note.clear();
      } catch (const ScaleGuardError& e) {
        c.note = e.what();
      } catch (const LayoutMismatchError& e) {
        c.status = CheckStatus::fail;
        c.max_deviation = 1.0;
        c.note = e.what();
      }
    }
  };

  auto run = run_protocol(cfg, sc.participants, sc.subset, observer);
  rep.transcript = std::move(run.transcript);
  rep.peak_terms = std::max(rep.peak_terms, run.state.size());
  rep.final_terms = run.state.size();
  rep.final_registers = run.state.width();
  if (keep_dump) rep.final_state_dump = dump(run.state);

  if (rep.transcript.aborted) {
    for (auto& c : oracle) {
      if (c.status == CheckStatus::skipped && c.note.empty()) c.note = "protocol aborted";
    }
  }
  rep.oracle = std::move(oracle);

  for (auto size : sc.checks.secrecy_subset_sizes) {
    SecrecyCheck c;
    c.report = secrecy_scan(cfg.params(), size);
    const bool ok = c.report.max_deviation <= kCheckTolerance && c.report.max_mixed_distance <= kCheckTolerance;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    rep.secrecy.push_back(std::move(c));
  }

  if (sc.expect.final_digit && !rep.transcript.aborted) {
    const auto& fs = rep.transcript.final_secret;
    rep.final_digit_check = fs && fs->digit == sc.expect.final_digit ? CheckStatus::pass : CheckStatus::fail;
  }

  bool checks_ok = rep.final_digit_check != CheckStatus::fail;
  for (const auto& c : rep.oracle) checks_ok = checks_ok && c.status != CheckStatus::fail;
  for (const auto& c : rep.secrecy) checks_ok = checks_ok && c.status != CheckStatus::fail;

  if (rep.transcript.aborted) {
    rep.exit_code = exit_codes::aborted;
    rep.status = "aborted";
  } else if (rep.transcript.rerun_required) {
    rep.exit_code = exit_codes::consistency_failed;
    rep.status = "consistency_failed";
  } else if (!checks_ok) {
    rep.exit_code = exit_codes::check_failed;
    rep.status = "check_failed";
  } else {
    rep.exit_code = exit_codes::ok;
    rep.status = "ok";
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SweepRow sweep_one(const std::string& path) {
  SweepRow row;
  row.path = path;
  try {
    const auto sc = load_scenario(path);
    row.expected_exit = sc.expect.exit_code;
    row.expected_digit = sc.expect.final_digit;
    const auto rep = run_scenario(sc);
    row.exit_code = rep.exit_code;
    if (rep.transcript.final_secret) row.final_digit = rep.transcript.final_secret->digit;
    row.message = rep.status;
  } catch (const Error& e) {
    row.exit_code = exit_codes::input_error;
    row.message = e.what();
    // An invalid scenario may still say which exit code it expects.
    try {
      std::ifstream in(path);
      const auto doc = Json::parse(in);
      if (doc.contains("expect") && doc["expect"].contains("exit_code")) {
        row.expected_exit = doc["expect"]["exit_code"].get<int>();
      }
    } catch (const std::exception&) {
    }
  }
  row.pass = row.exit_code == row.expected_exit &&
             (!row.expected_digit || row.exit_code != exit_codes::ok || row.final_digit == row.expected_digit);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const std::string& pattern, unsigned jobs) {
  const auto paths = expand_glob(pattern);
  if (paths.empty()) throw ScenarioError("glob", "no scenario files match '" + pattern + "'");
  std::vector<SweepRow> rows(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) rows[i] = sweep_one(paths[i]);
  };
  const unsigned n = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(paths.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string format_sweep(const std::vector<SweepRow>& rows) {
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, r.path.size());
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out << pad("scenario", width) << "  exit  expected  digit  result  status\n";
  std::size_t passed = 0;
  for (const auto& r : rows) {
    const std::string digit = r.final_digit ? std::to_string(*r.final_digit) : "-";
    char line[96];
    std::snprintf(line, sizeof line, "  %4d  %8d  %5s  %-6s  ", r.exit_code, r.expected_exit, digit.c_str(),
                  r.pass ? "PASS" : "FAIL");
    out << pad(r.path, width) << line << r.message << "\n";
    passed += r.pass;
  }
  out << rows.size() << " scenarios, " << passed << " passed, " << rows.size() - passed << " failed\n";
  return out.str();
}

}  // namespace qss::cli
