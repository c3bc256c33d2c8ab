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
#include <span>
#include <vector>

#include "qss/gfq.hpp"
#include "qss/linalg.hpp"
#include "qss/qstate.hpp"

namespace qss {

/// (k, n) threshold parameters over Z_q. Enforces 1 <= k <= n < 2k (the
/// no-cloning bound) and n <= q.
class SchemeParams {
 public:
  /// Evaluation points default to 0, 1, ..., n-1.
  SchemeParams(std::size_t k, std::size_t n, const PrimeField& field);
  SchemeParams(std::size_t k, std::size_t n, const PrimeField& field, EvalPoints points);

  /// Parameters with the smallest admissible prime (q >= max(n, 2)).
  static SchemeParams with_smallest_field(std::size_t k, std::size_t n);

  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }
  const PrimeField& field() const noexcept { return field_; }
  const EvalPoints& points() const noexcept { return points_; }

 private:
  std::size_t k_;
  std::size_t n_;
  PrimeField field_;
  EvalPoints points_;
};

/// Names the n share registers of one encoded secret and which of them are
/// still in the protocol. Quarantined shares stay in the state (they are
/// entangled with the rest) but may not take part in a reconstruction.
class ShareBundle {
 public:
  ShareBundle(SchemeParams params, std::vector<RegisterId> share_regs);

  const SchemeParams& params() const noexcept { return params_; }
  const std::vector<RegisterId>& registers() const noexcept { return regs_; }
  const RegisterId& share(std::size_t i) const { return regs_.at(i); }
  bool active(std::size_t i) const { return active_.at(i); }
  std::vector<std::size_t> active_indices() const;
  std::vector<std::size_t> quarantined_indices() const;

 private:
  SchemeParams params_;
  std::vector<RegisterId> regs_;
  std::vector<bool> active_;

  friend ShareBundle reduce_shares(const ShareBundle& bundle, std::size_t n_target);
};

struct SplitResult {
  SparseState state;
  ShareBundle bundle;
};

/// Encodes the secret register into n shares named "<secret>.<j>".
SplitResult split(SparseState state, const RegisterId& secret_reg, const SchemeParams& params);
SplitResult split(SparseState state, const RegisterId& secret_reg, const SchemeParams& params,
                  std::vector<RegisterId> share_regs);

/// Keeps the first n_target shares active and quarantines the rest.
ShareBundle reduce_shares(const ShareBundle& bundle, std::size_t n_target);

/// Which points play which role when a given k-subset reconstructs.
/// The subset's points act as x_0..x_{k-1}; `regen_points` are the k-1 points
/// at which the residual shares are re-created: every share outside the subset
/// first, then the smallest field elements not already used, until there are k-1.
struct RecoveryPlan {
  std::vector<std::size_t> subset;
  std::vector<std::size_t> others;
  EvalPoints subset_points;
  EvalPoints regen_points;
};

/// Throws SubsetError unless `subset` holds k distinct share indices below n.
RecoveryPlan plan_recovery(const SchemeParams& params, std::span<const std::size_t> subset);

/// Step 1: apply V_k(subset points)^{-1} to the k registers.
SparseState recovery_decode(SparseState state, std::span<const RegisterId> regs, const RecoveryPlan& plan);
/// Step 2: cyclic right shift, bringing the top coefficient to regs[0].
SparseState recovery_shift(SparseState state, std::span<const RegisterId> regs);
/// Step 3: V_{k-1}(regen points) on regs[1..k-1], then add regs[0] * z_i^{k-1} into regs[i].
SparseState recovery_regenerate(SparseState state, std::span<const RegisterId> regs,
                                const RecoveryPlan& plan);
/// Steps 1-3.
SparseState recover(SparseState state, std::span<const RegisterId> regs, const RecoveryPlan& plan);

struct ReconstructResult {
  SparseState state;
  RegisterId secret_reg;
};

/// Recovers the secret into the register of the lowest-indexed subset share.
/// The remaining registers are left in place, disentangled from the secret.
ReconstructResult reconstruct(SparseState state, const ShareBundle& bundle,
                              std::span<const std::size_t> subset);

}  // namespace qss
