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

#include "qss/report.hpp"

#include <cstdio>

#include "qss/rng.hpp"

namespace qss::cli {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json transcript_json(const Transcript& tr) {
  Json j;
  j["aborted"] = tr.aborted;
  j["rerun_required"] = tr.rerun_required;
  j["quitters"] = Json(std::vector<std::size_t>(tr.quitters.begin(), tr.quitters.end()));
  j["real_players"] = tr.real_players;
  j["subset"] = tr.subset;
  Json events = Json::array();
  for (const auto& e : tr.events) {
    Json ev;
    ev["round"] = e.round;
    ev["kind"] = to_string(e.kind);
    ev["actor"] = e.actor ? Json(*e.actor) : Json(nullptr);
    ev["peer"] = e.peer ? Json(*e.peer) : Json(nullptr);
    ev["detail"] = e.detail;
    ev["checksum"] = e.checksum ? Json(format_hex(*e.checksum)) : Json(nullptr);
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  return j;
}

std::string transcript_hash(const Transcript& tr) { return format_hex(fnv1a(transcript_json(tr).dump())); }

Json final_secret_json(const FinalSecret& fs) {
  Json j;
  j["mode"] = to_string(fs.mode);
  Json regs = Json::array();
  for (const auto& r : fs.registers) regs.push_back(r.name());
  j["registers"] = regs;
  j["digit"] = fs.digit ? Json(*fs.digit) : Json(nullptr);
  if (fs.mode == SecretMode::superposition) {
    Json dist = Json::array();
    for (const auto& [digits, p] : fs.distribution) {
      Json row;
      row["outcome"] = std::vector<unsigned>(digits.begin(), digits.end());
      row["probability"] = format_real(p);
      dist.push_back(std::move(row));
    }
    j["distribution"] = std::move(dist);
    j["purity"] = fs.purity ? Json(format_real(*fs.purity)) : Json(nullptr);
  }
  if (fs.mode == SecretMode::measured) {
    j["measured"] = fs.measured;
    j["consistent"] = fs.consistent;
  }
  return j;
}

Json secrecy_json(const SecrecyReport& r) {
  Json j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["q"] = r.q;
  j["subset_size"] = r.subset_size;
  j["description"] = r.description;
  j["subsets_checked"] = r.subsets_checked;
  j["secrets_compared"] = r.secrets_compared;
  j["max_deviation"] = format_real(r.max_deviation);
  j["max_mixed_distance"] = format_real(r.max_mixed_distance);
  return j;
}

Json report_json(const RunReport& rep, bool with_timing) {
  Json j;
  j["tool"] = {{"name", "qss"}, {"version", QSS_VERSION}};
  j["scenario"] = to_json(rep.scenario);
  j["status"] = rep.status;
  j["exit_code"] = rep.exit_code;
  j["transcript_hash"] = transcript_hash(rep.transcript);
  j["transcript"] = transcript_json(rep.transcript);
  j["final_secret"] = rep.transcript.final_secret ? final_secret_json(*rep.transcript.final_secret) : Json(nullptr);

  Json checks;
  Json oracle = Json::array();
  for (const auto& c : rep.oracle) {
    Json o;
    o["stage"] = to_string(c.stage);
    o["status"] = to_string(c.status);
    o["max_deviation"] = format_real(c.max_deviation);
    o["note"] = c.note;
    oracle.push_back(std::move(o));
  }
  checks["oracle"] = std::move(oracle);
  Json secrecy = Json::array();
  for (const auto& c : rep.secrecy) {
    Json s = secrecy_json(c.report);
    s["status"] = to_string(c.status);
    secrecy.push_back(std::move(s));
  }
  checks["secrecy"] = std::move(secrecy);
  checks["final_digit"] = rep.final_digit_check ? Json(to_string(*rep.final_digit_check)) : Json(nullptr);
  j["checks"] = std::move(checks);

  Json stats;
  stats["peak_terms"] = rep.peak_terms;
  stats["final_terms"] = rep.final_terms;
  stats["final_registers"] = rep.final_registers;
  if (with_timing) stats["wall_seconds"] = format_real(rep.wall_seconds);
  j["statistics"] = std::move(stats);
  return j;
}

}  // namespace qss::cli
