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

#include <cstdint>
#include <ostream>

namespace qss {

class FieldElement;

/// The prime field Z_q. The modulus is checked for primality on construction.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }

  /// Reduces `value` modulo q.
  FieldElement element(std::uint64_t value) const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t q_;
};

/// An element of Z_q. Carries its modulus so mixed-field arithmetic is caught.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, const PrimeField& field);

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return q_; }
  PrimeField field() const { return PrimeField(q_); }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  struct Unchecked {};
  FieldElement(std::uint64_t value, std::uint64_t q, Unchecked) noexcept
      : value_(value), q_(q) {}

  std::uint64_t value_;
  std::uint64_t q_;

  friend FieldElement add(const FieldElement&, const FieldElement&);
  friend FieldElement sub(const FieldElement&, const FieldElement&);
  friend FieldElement mul(const FieldElement&, const FieldElement&);
  friend FieldElement neg(const FieldElement&);
  friend FieldElement inv(const FieldElement&);
  friend FieldElement pow(const FieldElement&, std::uint64_t);
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);

/// Multiplicative inverse; throws ZeroInverseError for zero.
FieldElement inv(const FieldElement& a);

/// a^e with 0^0 = 1.
FieldElement pow(const FieldElement& a, std::uint64_t e);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

// Raw-integer helpers used by the hot kernels, where wrapping every digit in
// a FieldElement would dominate the cost. All arguments must already be < q.
inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept {
  const std::uint64_t s = a + b;
  return (s >= q || s < a) ? s - q : s;
}

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % q);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t q) noexcept;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t v) noexcept;

/// Smallest prime q with max(n, m) <= q <= 2 max(n, m). Requires n, m >= 1
/// (m = 1 behaves like m = 2: the interval [1, 2] holds the prime 2).
PrimeField find_modulus(std::uint64_t n, std::uint64_t m);

}  // namespace qss
