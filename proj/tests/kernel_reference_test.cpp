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

// Randomized differential tests: the OpenMP kernels against the serial
// map-based engine, over seeded random operation sequences.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qss/density.hpp"
#include "qss/qstate.hpp"
#include "qss/reference_state.hpp"
#include "support.hpp"

namespace qss {
namespace {

using reference::MapState;

struct Pair {
  SparseState fast;
  MapState slow;
};

std::vector<std::string> names_of(std::span<const RegisterId> ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(id.name());
  return out;
}

void expect_same(const Pair& p, const char* where) {
  EXPECT_TRUE(states_equal(p.fast, p.slow.to_sparse(), 1e-12)) << where;
}

class KernelReferenceTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(KernelReferenceTest, RandomOperationSequences) {
  std::mt19937_64 rng(GetParam());
  const std::uint64_t primes[] = {2, 3, 5, 7};
  const std::uint64_t q = primes[rng() % 4];
  const PrimeField f(q);

  const RegisterId src("s");
  const auto init = testing::random_amplitudes(q, rng);
  Pair p{testing::single(q, "s", init), MapState(q, {"s"})};
  p.slow.prepare("s", init);

  const std::size_t n = 2 + rng() % std::min<std::uint64_t>(q - 1, 3);
  const std::size_t k = 1 + rng() % n;
  std::vector<RegisterId> regs;
  for (std::size_t j = 0; j < n; ++j) regs.emplace_back("x" + std::to_string(j));
  std::vector<std::uint64_t> pts(q);
  for (std::uint64_t i = 0; i < q; ++i) pts[i] = i;
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.resize(n);
  std::vector<FieldElement> pe;
  for (auto x : pts) pe.push_back(f.element(x));

  p.fast = encode_isometry(std::move(p.fast), src, regs, k, EvalPoints(pe));
  p.slow.encode("s", names_of(regs), k, pts);
  expect_same(p, "encode");

  // A second, independent register entangled through controlled adds.
  const RegisterId extra("e");
  const Register er[] = {{extra, RegisterRole::ancilla}};
  const auto e_amps = testing::random_amplitudes(q, rng);
  p.fast = prepare(add_registers(std::move(p.fast), er), extra, e_amps);
  p.slow.add_register("e");
  p.slow.prepare("e", e_amps);
  regs.push_back(extra);
  expect_same(p, "prepare");

  for (int step = 0; step < 12; ++step) {
    switch (rng() % 3) {
      case 0: {
        const std::size_t a = rng() % regs.size();
        std::size_t b = rng() % regs.size();
        if (a == b) b = (b + 1) % regs.size();
        const std::uint64_t scalar = rng() % q;
        p.fast = controlled_add(std::move(p.fast), regs[a], regs[b], f.element(scalar));
        p.slow.controlled_add(regs[a].name(), regs[b].name(), scalar);
        expect_same(p, "controlled_add");
        break;
      }
      case 1: {
        const std::size_t l = 1 + rng() % std::min<std::size_t>(regs.size(), q);
        std::vector<RegisterId> sel = regs;
        std::shuffle(sel.begin(), sel.end(), rng);
        sel.resize(l);
        std::vector<std::uint64_t> zs(q);
        std::iota(zs.begin(), zs.end(), std::uint64_t{0});
        std::shuffle(zs.begin(), zs.end(), rng);
        std::vector<FieldElement> ze;
        for (std::size_t i = 0; i < l; ++i) ze.push_back(f.element(zs[i]));
        auto m = vandermonde(EvalPoints(ze));
        if (rng() % 2) m = invert(m);
        std::vector<std::vector<std::uint64_t>> raw(l, std::vector<std::uint64_t>(l));
        for (std::size_t r = 0; r < l; ++r) {
          for (std::size_t c = 0; c < l; ++c) raw[r][c] = m.raw(r, c);
        }
        p.fast = apply_matrix(std::move(p.fast), sel, m);
        p.slow.apply_matrix(names_of(sel), raw);
        expect_same(p, "apply_matrix");
        break;
      }
      default: {
        const std::size_t l = 1 + rng() % regs.size();
        std::vector<RegisterId> sel = regs;
        std::shuffle(sel.begin(), sel.end(), rng);
        sel.resize(l);
        p.fast = shift_right(std::move(p.fast), sel);
        p.slow.shift_right(names_of(sel));
        expect_same(p, "shift_right");
        break;
      }
    }
  }

  // Partial traces and Born distributions agree.
  std::vector<RegisterId> sub = regs;
  std::shuffle(sub.begin(), sub.end(), rng);
  sub.resize(1 + rng() % std::min<std::size_t>(2, sub.size()));
  const auto rho = reduced_density(p.fast, sub);
  const auto ref = p.slow.reduced_density(names_of(sub));
  for (std::size_t a = 0; a < rho.dim(); ++a) {
    for (std::size_t b = 0; b < rho.dim(); ++b) EXPECT_NEAR(std::abs(rho(a, b) - ref[a][b]), 0.0, 1e-12);
  }
  const auto dist = outcome_distribution(p.fast, sub);
  const auto ref_dist = p.slow.distribution(names_of(sub));
  double total = 0.0;
  for (const auto& [digits, prob] : dist) {
    EXPECT_NEAR(prob, ref_dist.at(digits), 1e-12);
    total += prob;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT(rho.hermiticity_error(), 1e-12);
  EXPECT_GT(rho.min_eigenvalue(), -1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, KernelReferenceTest, ::testing::Range<std::uint64_t>(1, 61));

TEST(KernelReferenceRoundTrip, FromAndToSparse) {
  std::mt19937_64 rng(99);
  auto s = testing::single(5, "s", testing::random_amplitudes(5, rng));
  const RegisterId targets[] = {RegisterId("x0"), RegisterId("x1"), RegisterId("x2")};
  s = encode_isometry(std::move(s), RegisterId("s"), targets, 2, EvalPoints::canonical(PrimeField(5), 3));
  EXPECT_TRUE(states_equal(MapState::from(s).to_sparse(), s, 1e-15));
}

}  // namespace
}  // namespace qss
