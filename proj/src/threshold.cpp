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

#include "qss/threshold.hpp"

#include <algorithm>
#include <string>

#include "qss/errors.hpp"

namespace qss {

SchemeParams::SchemeParams(std::size_t k, std::size_t n, const PrimeField& field)
    : SchemeParams(k, n, field,
                   n <= field.modulus() ? EvalPoints::canonical(field, n) : EvalPoints::canonical(field, 0)) {}

SchemeParams::SchemeParams(std::size_t k, std::size_t n, const PrimeField& field, EvalPoints points)
    : k_(k), n_(n), field_(field), points_(std::move(points)) {
  if (k_ < 1 || k_ > n_) {
    throw ParameterError("threshold parameters need 1 <= k <= n (k=" + std::to_string(k_) +
                         ", n=" + std::to_string(n_) + ")");
  }
  if (n_ >= 2 * k_) {
    throw ParameterError("n < 2k is required by the no-cloning bound (k=" + std::to_string(k_) +
                         ", n=" + std::to_string(n_) + ")");
  }
  if (n_ > field_.modulus()) {
    throw ParameterError("n=" + std::to_string(n_) + " exceeds the field size q=" +
                         std::to_string(field_.modulus()));
  }
  if (points_.size() != n_) {
    throw ParameterError("expected " + std::to_string(n_) + " evaluation points, got " +
                         std::to_string(points_.size()));
  }
  if (points_.field() != field_) throw ModulusMismatchError("evaluation points not in the scheme field");
}

SchemeParams SchemeParams::with_smallest_field(std::size_t k, std::size_t n) {
  return SchemeParams(k, n, find_modulus(std::max<std::size_t>(n, 1), 2));
}

ShareBundle::ShareBundle(SchemeParams params, std::vector<RegisterId> share_regs)
    : params_(std::move(params)), regs_(std::move(share_regs)), active_(regs_.size(), true) {
  if (regs_.size() != params_.n()) {
    throw ParameterError("share bundle needs exactly n=" + std::to_string(params_.n()) + " registers");
  }
  auto sorted = regs_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw RegisterError("share registers must be distinct");
  }
}

std::vector<std::size_t> ShareBundle::active_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    if (active_[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ShareBundle::quarantined_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    if (!active_[i]) out.push_back(i);
  }
  return out;
}

SplitResult split(SparseState state, const RegisterId& secret_reg, const SchemeParams& params) {
  std::vector<RegisterId> regs;
  regs.reserve(params.n());
  for (std::size_t j = 0; j < params.n(); ++j) regs.emplace_back(secret_reg.name() + "." + std::to_string(j));
  return split(std::move(state), secret_reg, params, std::move(regs));
}

SplitResult split(SparseState state, const RegisterId& secret_reg, const SchemeParams& params,
                  std::vector<RegisterId> share_regs) {
  if (state.dimension() != params.field().modulus()) {
    throw ModulusMismatchError("state dimension differs from the scheme field");
  }
  ShareBundle bundle(params, std::move(share_regs));
  auto encoded = encode_isometry(std::move(state), secret_reg, bundle.registers(), params.k(), params.points());
  return {std::move(encoded), std::move(bundle)};
}

ShareBundle reduce_shares(const ShareBundle& bundle, std::size_t n_target) {
  const std::size_t k = bundle.params().k();
  if (n_target < k || n_target > bundle.params().n()) {
    throw ParameterError("can only reduce to between k=" + std::to_string(k) + " and n=" +
                         std::to_string(bundle.params().n()) + " shares, asked for " +
                         std::to_string(n_target));
  }
  ShareBundle out = bundle;
  for (std::size_t i = n_target; i < out.active_.size(); ++i) out.active_[i] = false;
  return out;
}

RecoveryPlan plan_recovery(const SchemeParams& params, std::span<const std::size_t> subset) {
  const std::size_t k = params.k();
  std::vector<std::size_t> sub(subset.begin(), subset.end());
  std::sort(sub.begin(), sub.end());
  if (sub.size() != k) {
    throw SubsetError("reconstruction needs exactly k=" + std::to_string(k) + " shares, got " +
                      std::to_string(sub.size()));
  }
  if (std::adjacent_find(sub.begin(), sub.end()) != sub.end()) {
    throw SubsetError("reconstruction subset repeats a share");
  }
  if (sub.back() >= params.n()) throw SubsetError("share index out of range");

  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < params.n(); ++j) {
    if (!std::binary_search(sub.begin(), sub.end(), j)) others.push_back(j);
  }

  const auto& field = params.field();
  std::vector<FieldElement> regen;
  for (auto j : others) regen.push_back(params.points()[j]);
  for (std::uint64_t v = 0; regen.size() + 1 < k && v < field.modulus(); ++v) {
    const auto x = field.element(v);
    if (std::find(regen.begin(), regen.end(), x) == regen.end()) regen.push_back(x);
  }
  auto subset_points = params.points().select(sub);
  EvalPoints regen_points =
      regen.empty() ? EvalPoints::canonical(field, 0) : EvalPoints(std::move(regen));
  return {std::move(sub), std::move(others), std::move(subset_points), std::move(regen_points)};
}

SparseState recovery_decode(SparseState state, std::span<const RegisterId> regs, const RecoveryPlan& plan) {
  if (regs.size() != plan.subset_points.size()) {
    throw DimensionMismatchError("recovery needs one register per subset point");
  }
  return apply_matrix(std::move(state), regs, invert(vandermonde(plan.subset_points)));
}

SparseState recovery_shift(SparseState state, std::span<const RegisterId> regs) {
  return shift_right(std::move(state), regs);
}

SparseState recovery_regenerate(SparseState state, std::span<const RegisterId> regs,
                                const RecoveryPlan& plan) {
  const std::size_t k = regs.size();
  if (k < 2) return state;
  if (plan.regen_points.size() != k - 1) {
    throw DimensionMismatchError("need k-1 regeneration points");
  }
  const auto tail = regs.subspan(1);
  state = apply_matrix(std::move(state), tail, vandermonde(plan.regen_points));
  for (std::size_t i = 0; i < tail.size(); ++i) {
    state = controlled_add(std::move(state), regs[0], tail[i], pow(plan.regen_points[i], k - 1));
  }
  return state;
}

SparseState recover(SparseState state, std::span<const RegisterId> regs, const RecoveryPlan& plan) {
  state = recovery_decode(std::move(state), regs, plan);
  state = recovery_shift(std::move(state), regs);
  return recovery_regenerate(std::move(state), regs, plan);
}

ReconstructResult reconstruct(SparseState state, const ShareBundle& bundle,
                              std::span<const std::size_t> subset) {
  auto plan = plan_recovery(bundle.params(), subset);
  for (auto j : plan.subset) {
    if (!bundle.active(j)) {
      throw SubsetError("share " + std::to_string(j) + " is quarantined and cannot be used");
    }
  }
  std::vector<RegisterId> regs;
  for (auto j : plan.subset) regs.push_back(bundle.share(j));
  state = recover(std::move(state), regs, plan);
  return {std::move(state), regs.front()};
}

}  // namespace qss
