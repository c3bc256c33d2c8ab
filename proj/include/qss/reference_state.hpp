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

// Straightforward serial engine over std::map. Every operation is written
// from its textbook definition, with no shared code path with the OpenMP
// kernels in qstate.cpp, so agreement between the two is meaningful.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qss/qstate.hpp"

namespace qss::reference {

class MapState {
 public:
  using Tuple = std::vector<Digit>;

  /// All registers in |0>.
  MapState(std::uint64_t q, std::vector<std::string> names);

  static MapState from(const SparseState& state);
  SparseState to_sparse() const;

  std::uint64_t dimension() const { return q_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::map<Tuple, Amplitude>& terms() const { return terms_; }

  void add_register(const std::string& name);
  void prepare(const std::string& reg, std::span<const Amplitude> amplitudes);
  void encode(const std::string& src, const std::vector<std::string>& targets, std::size_t k,
              const std::vector<std::uint64_t>& points);
  void controlled_add(const std::string& src, const std::string& dst, std::uint64_t scalar = 1);
  void apply_matrix(const std::vector<std::string>& regs,
                    const std::vector<std::vector<std::uint64_t>>& m);
  /// Physically rotates the digits (the production engine relabels instead).
  void shift_right(const std::vector<std::string>& regs);

  std::vector<std::vector<Amplitude>> reduced_density(const std::vector<std::string>& regs) const;
  std::map<Tuple, double> distribution(const std::vector<std::string>& regs) const;

 private:
  std::size_t pos(const std::string& name) const;

  std::uint64_t q_;
  std::vector<std::string> names_;
  std::map<Tuple, Amplitude> terms_;
};

}  // namespace qss::reference
