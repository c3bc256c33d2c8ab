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

#include "qss/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "qss/report.hpp"

namespace qss::cli {

namespace {

const std::set<std::string> kTopLevel = {"name",   "k",            "n",      "q",       "m",
                                         "points", "scheme",       "secret_mode", "seed", "participants",
                                         "subset", "checks",       "expect"};

std::uint64_t as_uint(const Json& v, const std::string& field) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ScenarioError(field, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const Json& v, const std::string& field) {
  if (!v.is_string()) throw ScenarioError(field, "expected a string");
  return v.get<std::string>();
}

const Json& as_array(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ScenarioError(field, "expected an array");
  return v;
}

template <typename T, typename Fn>
T parse_enum_field(const Json& v, const std::string& field, Fn&& from_string) {
  const auto s = as_string(v, field);
  try {
    return from_string(s);
  } catch (const ParameterError& e) {
    throw ScenarioError(field, e.what());
  }
}

// Amplitudes are rounded to 12 decimals on input so that the echoed scenario
// (which prints 12 decimals) reproduces the run exactly.
double parse_real(const Json& v, const std::string& field) {
  double x = 0.0;
  if (v.is_number()) {
    x = v.get<double>();
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::size_t used = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ScenarioError(field, "'" + s + "' is not a number");
  } else {
    throw ScenarioError(field, "expected a number");
  }
  if (!std::isfinite(x)) throw ScenarioError(field, "must be finite");
  return std::round(x * 1e12) / 1e12;
}

Amplitude parse_amplitude(const Json& v, const std::string& field) {
  if (v.is_array()) {
    if (v.size() != 2) throw ScenarioError(field, "amplitude must be a number or [re, im]");
    return {parse_real(v[0], field + "[0]"), parse_real(v[1], field + "[1]")};
  }
  return {parse_real(v, field), 0.0};
}

ParticipantSpec parse_participant(const Json& v, std::size_t index) {
  const std::string base = "participants[" + std::to_string(index) + "]";
  if (!v.is_object()) throw ScenarioError(base, "expected an object");
  for (const auto& [key, _] : v.items()) {
    if (key != "id" && key != "digit" && key != "amplitudes" && key != "behavior" && key != "shift") {
      throw ScenarioError(base + "." + key, "unknown key");
    }
  }
  ParticipantSpec p;
  p.id = v.contains("id") ? as_uint(v["id"], base + ".id") : index;
  const bool has_digit = v.contains("digit");
  const bool has_amps = v.contains("amplitudes");
  if (has_digit == has_amps) throw ScenarioError(base, "give exactly one of 'digit' or 'amplitudes'");
  if (has_digit) {
    const auto d = as_uint(v["digit"], base + ".digit");
    if (d > 255) throw ScenarioError(base + ".digit", "digit must be below 256");
    p = ParticipantSpec::basis(p.id, d);
  } else {
    const auto& arr = as_array(v["amplitudes"], base + ".amplitudes");
    if (arr.empty()) throw ScenarioError(base + ".amplitudes", "must not be empty");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      p.private_state.push_back(parse_amplitude(arr[i], base + ".amplitudes[" + std::to_string(i) + "]"));
    }
  }
  if (v.contains("behavior")) p.behavior = parse_enum_field<Behavior>(v["behavior"], base + ".behavior", behavior_from_string);
  if (v.contains("shift")) {
    p.shift = as_uint(v["shift"], base + ".shift");
    if (p.behavior != Behavior::malicious_wrong_shares) {
      throw ScenarioError(base + ".shift", "only a malicious_wrong_shares participant takes a shift");
    }
  } else if (p.behavior == Behavior::malicious_wrong_shares) {
    p.shift = 1;
  }
  return p;
}

std::vector<std::size_t> parse_index_list(const Json& v, const std::string& field) {
  std::vector<std::size_t> out;
  const auto& arr = as_array(v, field);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_uint(arr[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

ProtocolConfig Scenario::config() const {
  const PrimeField field(q);
  std::vector<FieldElement> pts;
  for (auto x : points) pts.push_back(field.element(x));
  return ProtocolConfig(SchemeParams(k, n, field, EvalPoints(std::move(pts))), scheme, mode, seed);
}

Scenario parse_scenario(const Json& doc, std::string name) {
  if (!doc.is_object()) throw ScenarioError("/", "scenario must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (!kTopLevel.contains(key)) throw ScenarioError(key, "unknown key");
  }
  Scenario sc;
  sc.name = doc.contains("name") ? as_string(doc["name"], "name") : std::move(name);
  if (!doc.contains("k")) throw ScenarioError("k", "missing");
  if (!doc.contains("n")) throw ScenarioError("n", "missing");
  sc.k = as_uint(doc["k"], "k");
  sc.n = as_uint(doc["n"], "n");
  if (sc.n == 0 || sc.n > 64) throw ScenarioError("n", "must be between 1 and 64");
  if (doc.contains("scheme")) sc.scheme = parse_enum_field<Scheme>(doc["scheme"], "scheme", scheme_from_string);
  if (doc.contains("secret_mode")) {
    sc.mode = parse_enum_field<SecretMode>(doc["secret_mode"], "secret_mode", secret_mode_from_string);
  }
  if (doc.contains("seed")) sc.seed = as_uint(doc["seed"], "seed");

  if (!doc.contains("participants")) throw ScenarioError("participants", "missing");
  const auto& parr = as_array(doc["participants"], "participants");
  for (std::size_t i = 0; i < parr.size(); ++i) sc.participants.push_back(parse_participant(parr[i], i));

  // m: the private-state dimension; at least 2 and at least what the inputs need.
  std::uint64_t m = doc.contains("m") ? as_uint(doc["m"], "m") : 2;
  for (const auto& p : sc.participants) m = std::max<std::uint64_t>(m, p.private_state.size());
  if (m < 2) throw ScenarioError("m", "must be at least 2");
  sc.m = m;

  // Validate the scheme bounds before picking a field, so n >= 2k is reported as such.
  (void)SchemeParams(sc.k, sc.n, find_modulus(std::max<std::uint64_t>(sc.n, 2), 2));
  const std::uint64_t needed = sc.scheme == Scheme::scheme2 ? std::max<std::uint64_t>(sc.n, 2 * sc.k - 1) : sc.n;
  if (doc.contains("q")) {
    sc.q = as_uint(doc["q"], "q");
    if (!is_prime(sc.q)) throw ScenarioError("q", std::to_string(sc.q) + " is not prime");
    if (sc.q < m) throw ScenarioError("q", "must be at least m=" + std::to_string(m));
  } else {
    sc.q = find_modulus(needed, m).modulus();
  }
  if (sc.q > 256) throw ScenarioError("q", "the simulator supports q <= 256");

  if (doc.contains("points")) {
    sc.points = parse_index_list(doc["points"], "points");
    for (std::size_t i = 0; i < sc.points.size(); ++i) {
      if (sc.points[i] >= sc.q) throw ScenarioError("points[" + std::to_string(i) + "]", "must be below q");
    }
  } else {
    for (std::uint64_t j = 0; j < sc.n; ++j) sc.points.push_back(j);
  }

  if (doc.contains("subset")) sc.subset = parse_index_list(doc["subset"], "subset");

  if (doc.contains("checks")) {
    const auto& c = doc["checks"];
    if (!c.is_object()) throw ScenarioError("checks", "expected an object");
    for (const auto& [key, _] : c.items()) {
      if (key != "oracle_stages" && key != "secrecy_subset_sizes") throw ScenarioError("checks." + key, "unknown key");
    }
    if (c.contains("oracle_stages")) {
      const auto& arr = as_array(c["oracle_stages"], "checks.oracle_stages");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        sc.checks.oracle_stages.push_back(parse_enum_field<Stage>(
            arr[i], "checks.oracle_stages[" + std::to_string(i) + "]", stage_from_string));
      }
    }
    if (c.contains("secrecy_subset_sizes")) {
      sc.checks.secrecy_subset_sizes = parse_index_list(c["secrecy_subset_sizes"], "checks.secrecy_subset_sizes");
      for (std::size_t i = 0; i < sc.checks.secrecy_subset_sizes.size(); ++i) {
        if (sc.checks.secrecy_subset_sizes[i] >= sc.k) {
          throw ScenarioError("checks.secrecy_subset_sizes[" + std::to_string(i) + "]", "must be below k");
        }
      }
    }
  }

  if (doc.contains("expect")) {
    const auto& e = doc["expect"];
    if (!e.is_object()) throw ScenarioError("expect", "expected an object");
    for (const auto& [key, _] : e.items()) {
      if (key != "final_digit" && key != "exit_code") throw ScenarioError("expect." + key, "unknown key");
    }
    if (e.contains("final_digit")) sc.expect.final_digit = as_uint(e["final_digit"], "expect.final_digit");
    if (e.contains("exit_code")) sc.expect.exit_code = static_cast<int>(as_uint(e["exit_code"], "expect.exit_code"));
  }

  // Full protocol-level validation before anything is simulated.
  const auto cfg = sc.config();
  validate_specs(cfg, sc.participants);
  if (sc.subset) {
    auto sorted = *sc.subset;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != sc.k || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        sorted.back() >= sc.n) {
      throw ScenarioError("subset", "must list k=" + std::to_string(sc.k) + " distinct participant ids below n");
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("/", "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ScenarioError("/", std::string("not valid JSON: ") + e.what());
  }
  return parse_scenario(doc, path.stem().string());
}

Json to_json(const Scenario& sc) {
  Json j;
  j["name"] = sc.name;
  j["k"] = sc.k;
  j["n"] = sc.n;
  j["q"] = sc.q;
  j["m"] = sc.m;
  j["points"] = sc.points;
  j["scheme"] = to_string(sc.scheme);
  j["secret_mode"] = to_string(sc.mode);
  j["seed"] = sc.seed;
  Json parts = Json::array();
  for (const auto& p : sc.participants) {
    Json e;
    e["id"] = p.id;
    if (auto d = p.basis_digit(); d && p.private_state[*d] == Amplitude(1.0, 0.0)) {
      e["digit"] = *d;
    } else {
      Json amps = Json::array();
      for (const auto& a : p.private_state) amps.push_back({format_real(a.real()), format_real(a.imag())});
      e["amplitudes"] = amps;
    }
    e["behavior"] = to_string(p.behavior);
    if (p.behavior == Behavior::malicious_wrong_shares) e["shift"] = p.shift;
    parts.push_back(e);
  }
  j["participants"] = parts;
  if (sc.subset) j["subset"] = *sc.subset;
  Json checks;
  Json stages = Json::array();
  for (auto s : sc.checks.oracle_stages) stages.push_back(to_string(s));
  checks["oracle_stages"] = stages;
  checks["secrecy_subset_sizes"] = sc.checks.secrecy_subset_sizes;
  j["checks"] = checks;
  Json expect;
  if (sc.expect.final_digit) expect["final_digit"] = *sc.expect.final_digit;
  expect["exit_code"] = sc.expect.exit_code;
  j["expect"] = expect;
  return j;
}

}  // namespace qss::cli
