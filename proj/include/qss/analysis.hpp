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
#include <string>
#include <vector>

#include "qss/protocol.hpp"
#include "qss/qstate.hpp"
#include "qss/threshold.hpp"

namespace qss {

/// Closed-form global state of an all-honest scheme2 run in basis mode.
///
/// Register order: R_0..R_{n-1}, then C_{i,j} row by row (i the dealer, j the
/// holder, j < 2k-1 so quarantined shares are included). For the reordered
/// stage the front registers R_{sub0}, C_{0,sub0}..C_{n-1,sub0} come first.
/// Every term has amplitude q^{-n(k-1)/2}, one per choice of the free
/// polynomial coefficients.
struct OracleExpr {
  Stage stage = Stage::encoded;
  SchemeParams params;
  std::vector<std::uint64_t> secrets;  // s_0..s_{n-1}
  std::vector<std::size_t> subset;     // reconstructing participants; empty means 0..k-1
};

inline constexpr double kOracleMaxTerms = 1e6;

/// Enumerates the closed form directly with integer arithmetic. Throws
/// ScaleGuardError when q^{n(k-1)} > 1e6.
SparseState oracle_state(const OracleExpr& expr);

/// Registers of the oracle, in oracle order.
std::vector<RegisterId> oracle_registers(const OracleExpr& expr);

struct SecrecyReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t subset_size = 0;
  std::size_t subsets_checked = 0;
  std::size_t secrets_compared = 0;
  std::string description;
  /// Max entry-wise |rho_s - rho_s'| over subsets and secret pairs.
  double max_deviation = 0.0;
  /// Max entry-wise |rho - I/q| over single shares and secrets.
  double max_mixed_distance = 0.0;
};

/// Encodes every basis secret with one dealer and compares the reduced states
/// of all share subsets of `subset_size`. Runs in parallel across subsets.
SecrecyReport secrecy_scan(const SchemeParams& params, std::size_t subset_size);

/// Same comparison one level up: after a scheme2 generation with all-honest
/// basis inputs, the registers held by `coalition` (their R and every C
/// delivered to them) must not depend on the secrets of the other
/// participants. The coalition's own secrets are fixed at 0.
SecrecyReport coalition_secrecy(const SchemeParams& params, std::vector<std::size_t> coalition);

}  // namespace qss
