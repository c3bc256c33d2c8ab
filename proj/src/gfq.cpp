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

#include "qss/gfq.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "qss/errors.hpp"

namespace qss {

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus()) {
    throw ModulusMismatchError("field elements from Z_" + std::to_string(a.modulus()) +
                               " and Z_" + std::to_string(b.modulus()));
  }
}

}  // namespace

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) {
    throw NotPrimeError("field modulus " + std::to_string(q) + " is not prime");
  }
}

FieldElement PrimeField::element(std::uint64_t value) const { return FieldElement(value, *this); }
FieldElement PrimeField::zero() const { return FieldElement(0, *this); }
FieldElement PrimeField::one() const { return FieldElement(1, *this); }

FieldElement::FieldElement(std::uint64_t value, const PrimeField& field)
    : value_(value % field.modulus()), q_(field.modulus()) {}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {mod_add(a.value_, b.value_, a.q_), a.q_, FieldElement::Unchecked{}};
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {mod_add(a.value_, b.value_ == 0 ? 0 : a.q_ - b.value_, a.q_), a.q_,
          FieldElement::Unchecked{}};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {mod_mul(a.value_, b.value_, a.q_), a.q_, FieldElement::Unchecked{}};
}

FieldElement neg(const FieldElement& a) {
  return {a.value_ == 0 ? 0 : a.q_ - a.value_, a.q_, FieldElement::Unchecked{}};
}

FieldElement inv(const FieldElement& a) {
  if (a.value_ == 0) {
    throw ZeroInverseError("zero has no multiplicative inverse in Z_" + std::to_string(a.q_));
  }
  // Fermat: a^(q-2) = a^-1 for prime q.
  return {mod_pow(a.value_, a.q_ - 2, a.q_), a.q_, FieldElement::Unchecked{}};
}

FieldElement pow(const FieldElement& a, std::uint64_t e) {
  return {mod_pow(a.value_, e, a.q_), a.q_, FieldElement::Unchecked{}};
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
  return os << a.value() << " (mod " << a.modulus() << ")";
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t q) noexcept {
  std::uint64_t result = 1 % q;
  base %= q;
  while (e > 0) {
    if (e & 1U) result = mod_mul(result, base, q);
    base = mod_mul(base, base, q);
    e >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = mod_pow(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mod_mul(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField find_modulus(std::uint64_t n, std::uint64_t m) {
  if (n < 1 || m < 1) {
    throw ParameterError("find_modulus requires n >= 1 and m >= 1 (got n=" + std::to_string(n) +
                         ", m=" + std::to_string(m) + ")");
  }
  const std::uint64_t lo = std::max(n, m);
  for (std::uint64_t q = lo; q <= 2 * lo; ++q) {
    if (is_prime(q)) return PrimeField(q);
  }
  // Bertrand's postulate makes this unreachable.
  throw ParameterError("no prime in [" + std::to_string(lo) + ", " + std::to_string(2 * lo) + "]");
}

}  // namespace qss
