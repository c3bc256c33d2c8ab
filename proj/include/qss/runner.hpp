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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qss/analysis.hpp"
#include "qss/protocol.hpp"
#include "qss/scenario.hpp"

namespace qss::cli {

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int aborted = 2;
inline constexpr int consistency_failed = 3;
inline constexpr int check_failed = 4;
}  // namespace exit_codes

inline constexpr double kCheckTolerance = 1e-9;

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct OracleCheck {
  Stage stage = Stage::encoded;
  CheckStatus status = CheckStatus::skipped;
  double max_deviation = 0.0;
  std::string note;
};

struct SecrecyCheck {
  SecrecyReport report;
  CheckStatus status = CheckStatus::skipped;
};

struct RunReport {
  Scenario scenario;
  Transcript transcript;
  int exit_code = exit_codes::ok;
  std::string status;
  std::vector<OracleCheck> oracle;
  std::vector<SecrecyCheck> secrecy;
  std::optional<CheckStatus> final_digit_check;
  std::size_t peak_terms = 0;
  std::size_t final_terms = 0;
  std::size_t final_registers = 0;
  double wall_seconds = 0.0;
  std::string final_state_dump;
};

/// Generation, quitter judgment, reconstruction, then the requested checks.
/// Kernels run single-threaded. Errors from the library propagate.
RunReport run_scenario(const Scenario& scenario, bool keep_dump = false);

struct SweepRow {
  std::string path;
  int exit_code = 0;
  int expected_exit = 0;
  std::optional<std::uint64_t> final_digit;
  std::optional<std::uint64_t> expected_digit;
  std::string message;
  bool pass = false;
};

/// Runs each file with the given parallelism (across files only). Rows come
/// back sorted by path. Throws ScenarioError when nothing matches.
std::vector<SweepRow> sweep(const std::string& pattern, unsigned jobs);
std::vector<std::string> expand_glob(const std::string& pattern);
std::string format_sweep(const std::vector<SweepRow>& rows);

}  // namespace qss::cli
