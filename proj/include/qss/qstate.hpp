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

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qss/density.hpp"
#include "qss/gfq.hpp"
#include "qss/linalg.hpp"
#include "qss/rng.hpp"

namespace qss {

/// One register digit. The engine supports q <= 256.
using Digit = std::uint8_t;

inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr std::size_t kMaxSubsystemDim = 10'000;

class RegisterId {
 public:
  RegisterId() = default;
  explicit RegisterId(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  friend auto operator<=>(const RegisterId&, const RegisterId&) = default;

 private:
  std::string name_;
};

/// R_i: participant i's local register.
RegisterId local_register(std::size_t participant);
/// C_{dealer,holder}: share `holder` of dealer's private state.
RegisterId common_register(std::size_t dealer, std::size_t holder);
/// Register holding participant i's private state before encoding.
RegisterId private_register(std::size_t participant);

enum class RegisterRole { local, common, secret, ancilla };

struct Register {
  RegisterId id;
  RegisterRole role = RegisterRole::ancilla;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Ordered register list sharing one dimension q. Every structural change
/// returns a new layout with a bumped version.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::uint64_t dimension, std::vector<Register> registers = {});

  std::uint64_t dimension() const noexcept { return q_; }
  std::size_t size() const noexcept { return regs_.size(); }
  bool empty() const noexcept { return regs_.empty(); }
  std::uint64_t version() const noexcept { return version_; }

  const std::vector<Register>& registers() const noexcept { return regs_; }
  const Register& operator[](std::size_t pos) const { return regs_[pos]; }
  std::vector<RegisterId> ids() const;

  std::optional<std::size_t> find(const RegisterId& id) const;
  bool contains(const RegisterId& id) const { return find(id).has_value(); }
  /// Throws RegisterError when absent.
  std::size_t index_of(const RegisterId& id) const;
  std::vector<std::size_t> indices_of(std::span<const RegisterId> ids) const;

  RegisterLayout with_appended(std::span<const Register> regs) const;
  RegisterLayout without(std::size_t pos) const;
  /// Register at new position i is the register at old position order[i].
  RegisterLayout permuted(std::span<const std::size_t> order) const;
  /// Same positions, different names.
  RegisterLayout relabeled(std::vector<Register> regs) const;

  /// Same register ids, order ignored.
  bool same_registers(const RegisterLayout& other) const;

 private:
  std::uint64_t q_;
  std::vector<Register> regs_;
  std::uint64_t version_ = 0;
};

namespace detail {
struct StateAccess;
}

/// Pure state over a register layout, stored as (digit tuple, amplitude)
/// terms. Terms are kept in whatever order the last kernel produced; use
/// canonical_order() when a stable ordering is needed.
class SparseState {
 public:
  /// All registers in |0>.
  explicit SparseState(RegisterLayout layout);
  /// Validates tuple widths, digit range, uniqueness and unit norm.
  SparseState(RegisterLayout layout, std::vector<Digit> digits, std::vector<Amplitude> amplitudes);

  const RegisterLayout& layout() const noexcept { return layout_; }
  std::uint64_t dimension() const noexcept { return layout_.dimension(); }
  std::size_t width() const noexcept { return layout_.size(); }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<const Digit> digits(std::size_t term) const {
    return {digits_.data() + term * width(), width()};
  }
  Amplitude amplitude(std::size_t term) const { return amps_[term]; }
  std::span<const Digit> raw_digits() const noexcept { return digits_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }

  double norm_squared() const;
  /// Term indices sorted lexicographically by digit tuple.
  std::vector<std::size_t> canonical_order() const;
  /// Amplitude of a digit tuple (zero when absent). Linear scan.
  Amplitude amplitude_of(std::span<const Digit> tuple) const;

 private:
  SparseState(RegisterLayout layout, std::vector<Digit> digits, std::vector<Amplitude> amps,
              bool /*trusted*/);

  RegisterLayout layout_;
  std::vector<Digit> digits_;
  std::vector<Amplitude> amps_;

  friend struct detail::StateAccess;
};

SparseState new_zero_state(RegisterLayout layout);

/// Appends registers in |0>.
SparseState add_registers(SparseState state, std::span<const Register> regs);

/// Puts a fresh register into the given superposition (length <= q, padded with zeros).
SparseState prepare(SparseState state, const RegisterId& reg, std::span<const Amplitude> amplitudes);

/// |s> -> q^{-(k-1)/2} sum_{c in F^k, c_{k-1} = s} |p_c(x_0), ..., p_c(x_{n-1})>.
/// `src` leaves the layout; targets are appended in order (targets already in the
/// layout must be fresh and are moved to the end).
SparseState encode_isometry(SparseState state, const RegisterId& src,
                            std::span<const RegisterId> targets, std::size_t k,
                            const EvalPoints& points, RegisterRole target_role = RegisterRole::common);

/// |a>_src |b>_dst -> |a>_src |b + scalar a>_dst.
SparseState controlled_add(SparseState state, const RegisterId& src, const RegisterId& dst);
SparseState controlled_add(SparseState state, const RegisterId& src, const RegisterId& dst,
                           const FieldElement& scalar);

/// |y> -> |yM> on the listed registers. M must be invertible.
SparseState apply_matrix(SparseState state, std::span<const RegisterId> regs, const MatrixFq& m);

/// Contents of (r_0, ..., r_{l-1}) become (r_{l-1}, r_0, ..., r_{l-2}). Layout relabeling only.
SparseState shift_right(SparseState state, std::span<const RegisterId> regs);

/// Reorders the layout so `regs` come first (in order), others keep relative order.
SparseState move_to_front(SparseState state, std::span<const RegisterId> regs);

struct Measurement {
  std::vector<FieldElement> outcomes;
  double probability;
  SparseState collapsed;
};

/// Computational-basis measurement with Born sampling.
Measurement measure(SparseState state, std::span<const RegisterId> regs, RandomSource& rng);

/// Outcome probabilities for a computational-basis measurement, sorted by outcome.
std::vector<std::pair<std::vector<Digit>, double>> outcome_distribution(
    const SparseState& state, std::span<const RegisterId> regs);

/// Partial trace onto `regs`. Throws SubsystemTooLargeError when q^|regs| > 10^4.
DensityMatrix reduced_density(const SparseState& state, std::span<const RegisterId> regs);

/// max |a - phi b| with the unit phase phi fixed by the largest-magnitude term of a.
/// Registers are matched by id; throws LayoutMismatchError if the id sets differ.
double phase_aligned_distance(const SparseState& a, const SparseState& b);
bool states_equal(const SparseState& a, const SparseState& b, double tol = kNormTolerance);

/// Removes an unentangled register. Throws EntangledDiscardError otherwise.
SparseState discard_register(SparseState state, const RegisterId& reg);

/// One line per term in canonical order: "d0,d1,... re,im" with 12 decimals.
std::string dump(const SparseState& state);

/// Order-independent 64-bit fingerprint of layout ids, digits and amplitudes
/// (amplitudes quantized to 1e-10).
std::uint64_t checksum(const SparseState& state);

/// OpenMP thread count used by the state kernels.
void set_kernel_threads(int threads);
int kernel_threads();

}  // namespace qss
