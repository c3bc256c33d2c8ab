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

#include <nlohmann/json.hpp>
#include "qss/errors.hpp"
#include "qss/protocol.hpp"

namespace qss::cli {

using Json = nlohmann::ordered_json;

/// Malformed scenario. `field` is a JSON-pointer-like path to the offending entry.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : Error("scenario field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct CheckRequest {
  std::vector<Stage> oracle_stages;
  std::vector<std::size_t> secrecy_subset_sizes;
};

struct Expectation {
  std::optional<std::uint64_t> final_digit;
  int exit_code = 0;
};

/// A scenario with every default filled in.
struct Scenario {
  std::string name;
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::uint64_t m = 2;
  std::vector<std::uint64_t> points;
  Scheme scheme = Scheme::scheme2;
  SecretMode mode = SecretMode::basis;
  std::uint64_t seed = 0;
  std::vector<ParticipantSpec> participants;
  std::optional<std::vector<std::size_t>> subset;
  CheckRequest checks;
  Expectation expect;

  ProtocolConfig config() const;
};

/// Parses and validates; throws ScenarioError (bad field) or ParameterError
/// (parameters that violate the scheme's bounds).
Scenario parse_scenario(const Json& doc, std::string name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

/// The resolved scenario, loadable by parse_scenario.
Json to_json(const Scenario& scenario);

}  // namespace qss::cli
