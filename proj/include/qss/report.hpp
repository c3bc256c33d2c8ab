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

#include <string>

#include "qss/runner.hpp"
#include "qss/scenario.hpp"

namespace qss::cli {

/// Fixed 12-decimal rendering; negative zero prints as zero.
std::string format_real(double v);
std::string format_hex(std::uint64_t v);

Json transcript_json(const Transcript& transcript);
/// Fingerprint of the transcript's canonical JSON text.
std::string transcript_hash(const Transcript& transcript);
Json final_secret_json(const FinalSecret& fs);
Json secrecy_json(const SecrecyReport& report);

/// The full report. `with_timing = false` drops wall-clock fields, which is
/// the form compared against golden files.
Json report_json(const RunReport& report, bool with_timing = true);

}  // namespace qss::cli
