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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qss/qstate.hpp"
#include "qss/threshold.hpp"

namespace qss {

/// scheme1: every dealer's state is recovered separately (n recoveries) and
/// then summed. scheme2: shares are summed on arrival so one recovery of the
/// local registers yields the sum directly.
enum class Scheme { scheme1, scheme2 };

/// How the final secret is read out: the summed basis digit, the joint state
/// of the n+1 front registers, or a measurement of those registers.
enum class SecretMode { basis, superposition, measured };

enum class Behavior { honest, quitter_silent, malicious_wrong_shares };

/// Stages of a scheme2 run at which the global state has a closed form.
enum class Stage {
  encoded,         // every dealer has encoded, nothing delivered yet
  distributed,     // all shares delivered and summed into the local registers
  decoded,         // inverse Vandermonde applied to the subset's local registers
  shifted,         // cyclic shift puts the summed secret in front
  regenerated,     // residual local registers re-created
  rows_recovered,  // the same three steps applied to every dealer's share row
  reordered,       // the front participant's registers moved first
};

std::string to_string(Scheme s);
std::string to_string(SecretMode m);
std::string to_string(Behavior b);
std::string to_string(Stage s);
Scheme scheme_from_string(const std::string& s);
SecretMode secret_mode_from_string(const std::string& s);
Behavior behavior_from_string(const std::string& s);
Stage stage_from_string(const std::string& s);

class ProtocolConfig {
 public:
  ProtocolConfig(SchemeParams params, Scheme scheme, SecretMode mode, std::uint64_t seed);

  const SchemeParams& params() const noexcept { return params_; }
  Scheme scheme() const noexcept { return scheme_; }
  SecretMode secret_mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::size_t k() const noexcept { return params_.k(); }
  std::size_t n() const noexcept { return params_.n(); }
  std::uint64_t q() const noexcept { return params_.field().modulus(); }

  /// Shares produced per dealer: 2k-1 for scheme2 (the extra ones are
  /// quarantined), n for scheme1.
  std::size_t share_count() const noexcept;
  /// Parameters of each dealer's encoding. For scheme2 with n < 2k-1 the point
  /// list is extended with the smallest unused field elements.
  const SchemeParams& encoding_params() const noexcept { return encoding_; }

 private:
  SchemeParams params_;
  Scheme scheme_;
  SecretMode mode_;
  std::uint64_t seed_;
  SchemeParams encoding_;
};

struct ParticipantSpec {
  std::size_t id = 0;
  /// Amplitudes over |0> .. |q-1> (shorter lists are zero-padded).
  std::vector<Amplitude> private_state;
  Behavior behavior = Behavior::honest;
  /// Digit offset a malicious participant adds to the state it actually encodes.
  std::uint64_t shift = 0;

  static ParticipantSpec basis(std::size_t id, std::uint64_t digit, Behavior behavior = Behavior::honest);
  std::optional<std::uint64_t> basis_digit() const;
};

/// Throws ParameterError on any spec that does not fit the config.
void validate_specs(const ProtocolConfig& config, std::span<const ParticipantSpec> specs);

/// Marks participant `id` as encoding its digit shifted by `shift`.
std::vector<ParticipantSpec> inject_malicious(std::vector<ParticipantSpec> specs, std::size_t id,
                                              std::uint64_t shift = 1);

// Logical rounds. Time limits are rounds, not wall clock.
namespace rounds {
inline constexpr std::uint32_t prepare = 0;
inline constexpr std::uint32_t encode = 1;
inline constexpr std::uint32_t distribute = 2;
inline constexpr std::uint32_t report = 3;
inline constexpr std::uint32_t judge = 4;
inline constexpr std::uint32_t announce = 5;
inline constexpr std::uint32_t reconstruct = 6;
inline constexpr std::uint32_t finalize = 7;
}  // namespace rounds

enum class EventKind {
  prepare,
  encode,
  quarantine,
  distribute,
  accumulate,
  missing_share,
  quitter_verdict,
  discard,
  abort,
  announce,
  reconstruction_subset,
  recovery_step,
  recovery_invocation,
  measurement,
  consistency_check,
  final_secret,
};

std::string to_string(EventKind kind);

struct Event {
  std::uint32_t round = 0;
  EventKind kind = EventKind::prepare;
  std::optional<std::size_t> actor;  // who acts (sender, reporter, dealer)
  std::optional<std::size_t> peer;   // receiver, reported party
  std::string detail;
  std::optional<std::uint64_t> checksum;  // state fingerprint after the step
};

struct FinalSecret {
  SecretMode mode = SecretMode::basis;
  std::vector<RegisterId> registers;  // front registers: sum register first
  /// The summed digit: basis mode (when the sum register is in a basis state)
  /// and measured mode.
  std::optional<std::uint64_t> digit;
  /// Outcome distribution of the front registers (superposition mode).
  std::vector<std::pair<std::vector<Digit>, double>> distribution;
  /// Purity of the front registers' reduced state, when small enough to compute.
  std::optional<double> purity;
  std::vector<std::uint64_t> measured;
  bool consistent = true;
};

struct Transcript {
  std::vector<Event> events;
  bool aborted = false;
  bool rerun_required = false;
  std::set<std::size_t> quitters;
  std::vector<std::size_t> real_players;
  std::vector<std::size_t> subset;
  std::optional<FinalSecret> final_secret;

  std::size_t count(EventKind kind) const;
};

/// P_l is a quitter iff at least k missing-share reports against it were filed
/// in rounds up to `round_limit`.
std::set<std::size_t> judge_quitters(const Transcript& transcript, std::size_t k,
                                     std::uint32_t round_limit = rounds::report);

using StageObserver = std::function<void(Stage, const SparseState&)>;

struct GenerationResult {
  SparseState state;
  Transcript transcript;
};

/// Preparation, encoding, distribution, quitter judgment and announcements.
/// An abort is reported through transcript.aborted, not an exception.
GenerationResult run_generation(const ProtocolConfig& config, std::span<const ParticipantSpec> specs,
                                const StageObserver& observer = {});

struct ReconstructionResult {
  FinalSecret final_secret;
  SparseState state;
  std::vector<Event> events;
};

/// scheme2 reconstruction by `subset` (k real players) from a finished generation.
ReconstructionResult run_reconstruction(SparseState state, const ProtocolConfig& config,
                                        const Transcript& generation,
                                        std::span<const std::size_t> subset,
                                        const StageObserver& observer = {});

struct ProtocolRun {
  SparseState state;
  Transcript transcript;
};

/// scheme1 end to end: generation, n separate recoveries, then summation of
/// the recovered registers into an accumulator.
ProtocolRun run_scheme1(const ProtocolConfig& config, std::span<const ParticipantSpec> specs,
                        std::span<const std::size_t> subset);

/// Dispatches on config.scheme(). The subset defaults to the k lowest real players.
ProtocolRun run_protocol(const ProtocolConfig& config, std::span<const ParticipantSpec> specs,
                         std::optional<std::vector<std::size_t>> subset = std::nullopt,
                         const StageObserver& observer = {});

}  // namespace qss
