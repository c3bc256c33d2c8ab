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

#include "qss/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qss/errors.hpp"

namespace qss {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& s, const std::pair<Enum, const char*> (&table)[N], const char* what) {
  for (const auto& [value, name] : table) {
    if (s == name) return value;
  }
  throw ParameterError(std::string("unknown ") + what + " '" + s + "'");
}

template <typename Enum, std::size_t N>
std::string print_enum(Enum e, const std::pair<Enum, const char*> (&table)[N]) {
  for (const auto& [value, name] : table) {
    if (value == e) return name;
  }
  return "?";
}

constexpr std::pair<Scheme, const char*> kSchemes[] = {{Scheme::scheme1, "scheme1"},
                                                       {Scheme::scheme2, "scheme2"}};
constexpr std::pair<SecretMode, const char*> kModes[] = {{SecretMode::basis, "basis"},
                                                         {SecretMode::superposition, "superposition"},
                                                         {SecretMode::measured, "measured"}};
constexpr std::pair<Behavior, const char*> kBehaviors[] = {
    {Behavior::honest, "honest"},
    {Behavior::quitter_silent, "quitter_silent"},
    {Behavior::malicious_wrong_shares, "malicious_wrong_shares"}};
constexpr std::pair<Stage, const char*> kStages[] = {
    {Stage::encoded, "encoded"},         {Stage::distributed, "distributed"},
    {Stage::decoded, "decoded"},         {Stage::shifted, "shifted"},
    {Stage::regenerated, "regenerated"}, {Stage::rows_recovered, "rows_recovered"},
    {Stage::reordered, "reordered"}};
constexpr std::pair<EventKind, const char*> kEvents[] = {
    {EventKind::prepare, "prepare"},
    {EventKind::encode, "encode"},
    {EventKind::quarantine, "quarantine"},
    {EventKind::distribute, "distribute"},
    {EventKind::accumulate, "accumulate"},
    {EventKind::missing_share, "missing_share"},
    {EventKind::quitter_verdict, "quitter_verdict"},
    {EventKind::discard, "discard"},
    {EventKind::abort, "abort"},
    {EventKind::announce, "announce"},
    {EventKind::reconstruction_subset, "reconstruction_subset"},
    {EventKind::recovery_step, "recovery_step"},
    {EventKind::recovery_invocation, "recovery_invocation"},
    {EventKind::measurement, "measurement"},
    {EventKind::consistency_check, "consistency_check"},
    {EventKind::final_secret, "final_secret"}};

SchemeParams make_encoding_params(const SchemeParams& params, Scheme scheme) {
  const std::size_t k = params.k();
  const std::size_t shares = scheme == Scheme::scheme2 ? 2 * k - 1 : params.n();
  if (shares == params.n()) return params;
  const auto& field = params.field();
  if (shares > field.modulus()) {
    throw ParameterError("scheme2 with n < 2k-1 encodes 2k-1=" + std::to_string(shares) +
                         " shares, which needs q >= " + std::to_string(shares) + " (q=" +
                         std::to_string(field.modulus()) + ")");
  }
  std::vector<FieldElement> pts(params.points().begin(), params.points().end());
  for (std::uint64_t v = 0; pts.size() < shares; ++v) {
    const auto x = field.element(v);
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  // The (k, 2k-1) encoding deliberately exceeds the participant-level n, so
  // it is built with n = 2k-1, which satisfies n < 2k.
  return SchemeParams(k, shares, field, EvalPoints(std::move(pts)));
}

std::vector<Amplitude> encoded_amplitudes(const ParticipantSpec& spec, std::uint64_t q) {
  std::vector<Amplitude> amps(q, Amplitude(0.0, 0.0));
  for (std::size_t v = 0; v < spec.private_state.size(); ++v) amps[v] = spec.private_state[v];
  if (spec.behavior != Behavior::malicious_wrong_shares || spec.shift % q == 0) return amps;
  std::vector<Amplitude> shifted(q, Amplitude(0.0, 0.0));
  for (std::uint64_t v = 0; v < q; ++v) shifted[(v + spec.shift) % q] = amps[v];
  return shifted;
}

Event make_event(std::uint32_t round, EventKind kind, std::optional<std::size_t> actor = std::nullopt,
                 std::optional<std::size_t> peer = std::nullopt, std::string detail = {},
                 std::optional<std::uint64_t> sum = std::nullopt) {
  return Event{round, kind, actor, peer, std::move(detail), sum};
}

std::string join(std::span<const std::size_t> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<std::size_t> checked_subset(const ProtocolConfig& config, const Transcript& generation,
                                        std::span<const std::size_t> subset) {
  if (generation.aborted) throw SubsetError("cannot reconstruct after an aborted generation");
  std::vector<std::size_t> sub(subset.begin(), subset.end());
  std::sort(sub.begin(), sub.end());
  if (sub.size() != config.k()) {
    throw SubsetError("reconstruction needs exactly k=" + std::to_string(config.k()) +
                      " participants, got " + std::to_string(sub.size()));
  }
  if (std::adjacent_find(sub.begin(), sub.end()) != sub.end()) {
    throw SubsetError("reconstruction subset repeats a participant");
  }
  for (auto p : sub) {
    if (std::find(generation.real_players.begin(), generation.real_players.end(), p) ==
        generation.real_players.end()) {
      throw SubsetError("participant " + std::to_string(p) + " is not a real player");
    }
  }
  return sub;
}

/// Reads the final secret off the front registers (sum register first).
FinalSecret read_out(SparseState& state, const std::vector<RegisterId>& front,
                     const ProtocolConfig& config, std::vector<Event>& events) {
  const std::uint64_t q = config.q();
  FinalSecret out;
  out.mode = config.secret_mode();
  out.registers = front;

  const RegisterId sum_reg[] = {front.front()};
  auto basis_digit = [&]() -> std::optional<std::uint64_t> {
    const auto rho = reduced_density(state, sum_reg);
    for (std::size_t d = 0; d < rho.dim(); ++d) {
      if (rho(d, d).real() >= 1.0 - kNormTolerance) return d;
    }
    return std::nullopt;
  };

  double dim = 1.0;
  for (std::size_t i = 0; i < front.size(); ++i) dim *= static_cast<double>(q);

  switch (config.secret_mode()) {
    case SecretMode::basis:
      out.digit = basis_digit();
      break;
    case SecretMode::superposition:
      out.digit = basis_digit();
      out.distribution = outcome_distribution(state, front);
      if (dim <= static_cast<double>(kMaxSubsystemDim)) out.purity = reduced_density(state, front).purity();
      break;
    case SecretMode::measured: {
      auto rng = derive_stream(config.seed(), rounds::finalize, front);
      auto m = measure(std::move(state), front, rng);
      state = std::move(m.collapsed);
      std::uint64_t share_sum = 0;
      for (std::size_t i = 0; i < m.outcomes.size(); ++i) {
        out.measured.push_back(m.outcomes[i].value());
        if (i > 0) share_sum = (share_sum + m.outcomes[i].value()) % q;
      }
      out.digit = out.measured.front();
      out.consistent = share_sum == out.measured.front();
      events.push_back(make_event(rounds::finalize, EventKind::measurement, std::nullopt, std::nullopt,
                                  "outcomes " + join(std::vector<std::size_t>(out.measured.begin(),
                                                                              out.measured.end())),
                                  checksum(state)));
      events.push_back(make_event(rounds::finalize, EventKind::consistency_check, std::nullopt,
                                  std::nullopt,
                                  out.consistent ? "pass" : "fail: share outcomes do not sum to the secret"));
      break;
    }
  }
  events.push_back(make_event(rounds::finalize, EventKind::final_secret, std::nullopt, std::nullopt,
                              out.digit ? "digit " + std::to_string(*out.digit) : "entangled"));
  return out;
}

}  // namespace

std::string to_string(Scheme s) { return print_enum(s, kSchemes); }
std::string to_string(SecretMode m) { return print_enum(m, kModes); }
std::string to_string(Behavior b) { return print_enum(b, kBehaviors); }
std::string to_string(Stage s) { return print_enum(s, kStages); }
std::string to_string(EventKind kind) { return print_enum(kind, kEvents); }
Scheme scheme_from_string(const std::string& s) { return parse_enum(s, kSchemes, "scheme"); }
SecretMode secret_mode_from_string(const std::string& s) { return parse_enum(s, kModes, "secret mode"); }
Behavior behavior_from_string(const std::string& s) { return parse_enum(s, kBehaviors, "behavior"); }
Stage stage_from_string(const std::string& s) { return parse_enum(s, kStages, "stage"); }

ProtocolConfig::ProtocolConfig(SchemeParams params, Scheme scheme, SecretMode mode, std::uint64_t seed)
    : params_(std::move(params)),
      scheme_(scheme),
      mode_(mode),
      seed_(seed),
      encoding_(make_encoding_params(params_, scheme)) {
  if (params_.field().modulus() > 256) {
    throw ParameterError("the state engine supports q <= 256");
  }
}

std::size_t ProtocolConfig::share_count() const noexcept { return encoding_.n(); }

ParticipantSpec ParticipantSpec::basis(std::size_t id, std::uint64_t digit, Behavior behavior) {
  ParticipantSpec spec;
  spec.id = id;
  spec.private_state.assign(digit + 1, Amplitude(0.0, 0.0));
  spec.private_state[digit] = {1.0, 0.0};
  spec.behavior = behavior;
  return spec;
}

std::optional<std::uint64_t> ParticipantSpec::basis_digit() const {
  std::optional<std::uint64_t> digit;
  for (std::size_t v = 0; v < private_state.size(); ++v) {
    if (std::abs(private_state[v]) < kPruneThreshold) continue;
    if (digit) return std::nullopt;
    digit = v;
  }
  return digit;
}

void validate_specs(const ProtocolConfig& config, std::span<const ParticipantSpec> specs) {
  if (specs.size() != config.n()) {
    throw ParameterError("expected " + std::to_string(config.n()) + " participants, got " +
                         std::to_string(specs.size()));
  }
  std::vector<bool> seen(config.n(), false);
  for (const auto& s : specs) {
    const std::string who = "participant " + std::to_string(s.id);
    if (s.id >= config.n() || seen[s.id]) throw ParameterError(who + ": id missing, repeated or out of range");
    seen[s.id] = true;
    if (s.private_state.empty() || s.private_state.size() > config.q()) {
      throw ParameterError(who + ": private state needs between 1 and q=" + std::to_string(config.q()) +
                           " amplitudes");
    }
    double norm = 0.0;
    for (const auto& a : s.private_state) norm += std::norm(a);
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw ParameterError(who + ": private state is not normalized (norm^2 " + std::to_string(norm) + ")");
    }
    if (config.secret_mode() == SecretMode::basis && !s.basis_digit()) {
      throw ParameterError(who + ": basis mode requires a basis-state private state");
    }
  }
}

std::vector<ParticipantSpec> inject_malicious(std::vector<ParticipantSpec> specs, std::size_t id,
                                              std::uint64_t shift) {
  for (auto& s : specs) {
    if (s.id == id) {
      s.behavior = Behavior::malicious_wrong_shares;
      s.shift = shift;
      return specs;
    }
  }
  throw ParameterError("no participant with id " + std::to_string(id));
}

std::size_t Transcript::count(EventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [kind](const Event& e) { return e.kind == kind; }));
}

std::set<std::size_t> judge_quitters(const Transcript& transcript, std::size_t k, std::uint32_t round_limit) {
  std::map<std::size_t, std::set<std::size_t>> reporters;
  for (const auto& e : transcript.events) {
    if (e.kind != EventKind::missing_share || e.round > round_limit || !e.actor || !e.peer) continue;
    reporters[*e.peer].insert(*e.actor);
  }
  std::set<std::size_t> out;
  for (const auto& [party, who] : reporters) {
    if (who.size() >= k) out.insert(party);
  }
  return out;
}

GenerationResult run_generation(const ProtocolConfig& config, std::span<const ParticipantSpec> specs,
                                const StageObserver& observer) {
  validate_specs(config, specs);
  const std::size_t n = config.n();
  const std::size_t k = config.k();
  const std::uint64_t q = config.q();
  const bool joint = config.scheme() == Scheme::scheme2;
  const auto& encoding = config.encoding_params();
  const std::size_t shares = encoding.n();

  std::vector<const ParticipantSpec*> by_id(n);
  for (const auto& s : specs) by_id[s.id] = &s;
  auto is_dealer = [&](std::size_t i) { return by_id[i]->behavior != Behavior::quitter_silent; };

  Transcript tr;
  std::vector<Register> locals;
  if (joint) {
    for (std::size_t j = 0; j < n; ++j) locals.push_back({local_register(j), RegisterRole::local});
  }
  SparseState state(RegisterLayout(q, locals));

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_dealer(i)) continue;
    const Register reg[] = {{private_register(i), RegisterRole::secret}};
    state = add_registers(std::move(state), reg);
    state = prepare(std::move(state), private_register(i), encoded_amplitudes(*by_id[i], q));
    std::string detail = "private state prepared";
    if (by_id[i]->behavior == Behavior::malicious_wrong_shares) {
      detail += "; encodes digit shifted by " + std::to_string(by_id[i]->shift % q);
    }
    tr.events.push_back(make_event(rounds::prepare, EventKind::prepare, i, std::nullopt, detail));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_dealer(i)) continue;
    std::vector<RegisterId> targets;
    for (std::size_t j = 0; j < shares; ++j) targets.push_back(common_register(i, j));
    state = split(std::move(state), private_register(i), encoding, targets).state;
    tr.events.push_back(make_event(rounds::encode, EventKind::encode, i, std::nullopt,
                                   std::to_string(shares) + " shares", checksum(state)));
    for (std::size_t j = n; j < shares; ++j) {
      tr.events.push_back(make_event(rounds::encode, EventKind::quarantine, i, j, "share kept out of protocol"));
    }
  }
  if (observer) observer(Stage::encoded, state);

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_dealer(i)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      tr.events.push_back(make_event(rounds::distribute, EventKind::distribute, i, j, common_register(i, j).name()));
      if (joint && is_dealer(j)) {
        state = controlled_add(std::move(state), common_register(i, j), local_register(j));
        tr.events.push_back(make_event(rounds::distribute, EventKind::accumulate, j, i,
                                       common_register(i, j).name() + " -> " + local_register(j).name()));
      }
    }
  }

  // Reports are honest and filed by everyone, quitters included.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      if (l != j && !is_dealer(l)) {
        tr.events.push_back(make_event(rounds::report, EventKind::missing_share, j, l, "no share received"));
      }
    }
  }

  tr.quitters = judge_quitters(tr, k, rounds::report);
  for (auto l : tr.quitters) {
    tr.events.push_back(make_event(rounds::judge, EventKind::quitter_verdict, std::nullopt, l, "quitter"));
  }
  if (tr.quitters.size() > n - k) {
    tr.aborted = true;
    tr.events.push_back(make_event(rounds::judge, EventKind::abort, std::nullopt, std::nullopt,
                                   std::to_string(tr.quitters.size()) + " quitters exceed n-k=" +
                                       std::to_string(n - k)));
    return {std::move(state), std::move(tr)};
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!tr.quitters.contains(j)) tr.real_players.push_back(j);
  }
  if (joint) {
    for (auto l : tr.quitters) {
      state = discard_register(std::move(state), local_register(l));
      tr.events.push_back(make_event(rounds::judge, EventKind::discard, l, std::nullopt, local_register(l).name()));
    }
  }

  bool everyone_announced = true;
  for (auto j : tr.real_players) {
    const bool complete = std::all_of(tr.real_players.begin(), tr.real_players.end(),
                                      [&](std::size_t l) { return is_dealer(l); });
    if (complete && is_dealer(j)) {
      tr.events.push_back(make_event(rounds::announce, EventKind::announce, j, std::nullopt, "actions completed"));
    } else {
      everyone_announced = false;
    }
  }
  if (!everyone_announced) {
    tr.aborted = true;
    tr.events.push_back(make_event(rounds::announce, EventKind::abort, std::nullopt, std::nullopt,
                                   "a real player could not announce completion"));
    return {std::move(state), std::move(tr)};
  }
  if (observer && joint) observer(Stage::distributed, state);
  return {std::move(state), std::move(tr)};
}

ReconstructionResult run_reconstruction(SparseState state, const ProtocolConfig& config,
                                        const Transcript& generation, std::span<const std::size_t> subset,
                                        const StageObserver& observer) {
  if (config.scheme() != Scheme::scheme2) {
    throw ParameterError("run_reconstruction drives scheme2; use run_scheme1 for scheme1");
  }
  const auto sub = checked_subset(config, generation, subset);
  const auto plan = plan_recovery(config.encoding_params(), sub);
  const auto& dealers = generation.real_players;
  std::vector<Event> events;
  events.push_back(make_event(rounds::reconstruct, EventKind::reconstruction_subset, std::nullopt,
                              std::nullopt, join(sub)));

  auto step = [&](Stage stage, std::string detail, std::optional<std::size_t> actor = std::nullopt) {
    events.push_back(make_event(rounds::reconstruct, EventKind::recovery_step, actor, std::nullopt,
                                std::move(detail), checksum(state)));
    if (observer) observer(stage, state);
  };

  std::vector<RegisterId> locals;
  for (auto j : plan.subset) locals.push_back(local_register(j));
  state = recovery_decode(std::move(state), locals, plan);
  step(Stage::decoded, "inverse Vandermonde on local registers");
  state = recovery_shift(std::move(state), locals);
  step(Stage::shifted, "cyclic shift of local registers");
  state = recovery_regenerate(std::move(state), locals, plan);
  events.push_back(make_event(rounds::reconstruct, EventKind::recovery_invocation, std::nullopt, std::nullopt,
                              "local registers", checksum(state)));
  step(Stage::regenerated, "residual local registers regenerated");

  for (auto d : dealers) {
    std::vector<RegisterId> row;
    for (auto j : plan.subset) row.push_back(common_register(d, j));
    state = recover(std::move(state), row, plan);
    events.push_back(make_event(rounds::reconstruct, EventKind::recovery_invocation, d, std::nullopt,
                                "share row of dealer " + std::to_string(d), checksum(state)));
  }
  step(Stage::rows_recovered, "all share rows recovered");

  std::vector<RegisterId> front{local_register(plan.subset.front())};
  for (auto d : dealers) front.push_back(common_register(d, plan.subset.front()));
  state = move_to_front(std::move(state), front);
  step(Stage::reordered, "front participant's registers moved first");

  auto final_secret = read_out(state, front, config, events);
  return {std::move(final_secret), std::move(state), std::move(events)};
}

ProtocolRun run_scheme1(const ProtocolConfig& config, std::span<const ParticipantSpec> specs,
                        std::span<const std::size_t> subset) {
  if (config.scheme() != Scheme::scheme1) throw ParameterError("run_scheme1 needs a scheme1 config");
  auto gen = run_generation(config, specs);
  if (gen.transcript.aborted) return {std::move(gen.state), std::move(gen.transcript)};

  auto& tr = gen.transcript;
  auto state = std::move(gen.state);
  const auto sub = checked_subset(config, tr, subset);
  tr.subset = sub;
  tr.events.push_back(make_event(rounds::reconstruct, EventKind::reconstruction_subset, std::nullopt,
                                 std::nullopt, join(sub)));

  std::vector<RegisterId> recovered;
  for (auto d : tr.real_players) {
    std::vector<RegisterId> regs;
    for (std::size_t j = 0; j < config.share_count(); ++j) regs.push_back(common_register(d, j));
    ShareBundle bundle(config.encoding_params(), std::move(regs));
    auto r = reconstruct(std::move(state), bundle, sub);
    state = std::move(r.state);
    recovered.push_back(r.secret_reg);
    tr.events.push_back(make_event(rounds::reconstruct, EventKind::recovery_invocation, d, std::nullopt,
                                   "private state of dealer " + std::to_string(d) + " -> " + r.secret_reg.name(),
                                   checksum(state)));
  }

  const RegisterId acc("A");
  const Register acc_reg[] = {{acc, RegisterRole::secret}};
  state = add_registers(std::move(state), acc_reg);
  for (const auto& r : recovered) state = controlled_add(std::move(state), r, acc);

  std::vector<RegisterId> front{acc};
  front.insert(front.end(), recovered.begin(), recovered.end());
  state = move_to_front(std::move(state), front);

  std::vector<Event> events;
  auto final_secret = read_out(state, front, config, events);
  tr.events.insert(tr.events.end(), events.begin(), events.end());
  tr.rerun_required = !final_secret.consistent;
  tr.final_secret = std::move(final_secret);
  return {std::move(state), std::move(tr)};
}

ProtocolRun run_protocol(const ProtocolConfig& config, std::span<const ParticipantSpec> specs,
                         std::optional<std::vector<std::size_t>> subset, const StageObserver& observer) {
  auto default_subset = [&](const Transcript& tr) {
    if (subset) return *subset;
    const auto take = std::min(config.k(), tr.real_players.size());
    return std::vector<std::size_t>(tr.real_players.begin(),
                                    tr.real_players.begin() + static_cast<std::ptrdiff_t>(take));
  };
  if (config.scheme() == Scheme::scheme1) {
    if (subset) return run_scheme1(config, specs, *subset);
    auto probe = run_generation(config, specs);
    if (probe.transcript.aborted) return {std::move(probe.state), std::move(probe.transcript)};
    return run_scheme1(config, specs, default_subset(probe.transcript));
  }

  auto gen = run_generation(config, specs, observer);
  if (gen.transcript.aborted) return {std::move(gen.state), std::move(gen.transcript)};
  auto tr = std::move(gen.transcript);
  const auto sub = default_subset(tr);
  auto rec = run_reconstruction(std::move(gen.state), config, tr, sub, observer);
  tr.subset = checked_subset(config, tr, sub);
  tr.events.insert(tr.events.end(), rec.events.begin(), rec.events.end());
  tr.rerun_required = !rec.final_secret.consistent;
  tr.final_secret = std::move(rec.final_secret);
  return {std::move(rec.state), std::move(tr)};
}

}  // namespace qss
