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

// Helpers shared by the tests. Everything here is written with plain integer
// arithmetic so it can act as an oracle for the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qss/qstate.hpp"

namespace qss::testing {

inline bool trial_division_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline std::uint64_t naive_eval(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t q) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t term = c[i] % q;
    for (std::size_t e = 0; e < i; ++e) term = term * x % q;
    acc = (acc + term) % q;
  }
  return acc;
}

inline std::vector<Amplitude> basis_amplitudes(std::uint64_t q, std::uint64_t digit) {
  std::vector<Amplitude> a(q, Amplitude(0.0, 0.0));
  a[digit] = 1.0;
  return a;
}

/// Seeded random normalized amplitude vector of length q.
inline std::vector<Amplitude> random_amplitudes(std::uint64_t q, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Amplitude> a(q);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return a;
}

/// Single-register state named `name` holding `amps`.
inline SparseState single(std::uint64_t q, const std::string& name, const std::vector<Amplitude>& amps) {
  const Register reg[] = {{RegisterId(name), RegisterRole::secret}};
  auto state = add_registers(SparseState(RegisterLayout(q)), reg);
  return prepare(std::move(state), RegisterId(name), amps);
}

/// Hand-rolled outer product |a><a| as a dense row-major matrix.
inline std::vector<Amplitude> projector(const std::vector<Amplitude>& a) {
  std::vector<Amplitude> out(a.size() * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out[i * a.size() + j] = a[i] * std::conj(a[j]);
  }
  return out;
}

}  // namespace qss::testing
