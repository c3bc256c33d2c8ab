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

#include "qss/qstate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qss/density.hpp"
#include "qss/errors.hpp"
#include "qss/rng.hpp"
#include "support.hpp"

namespace qss {
namespace {

using testing::basis_amplitudes;
using testing::single;

const RegisterId A("a");
const RegisterId B("b");
const RegisterId C("c");

SparseState three_regs(std::uint64_t q, std::vector<Digit> digits) {
  return SparseState(RegisterLayout(q, {{A, RegisterRole::ancilla}, {B, RegisterRole::ancilla}, {C, RegisterRole::ancilla}}),
                     std::move(digits), {Amplitude(1.0, 0.0)});
}

std::map<std::vector<Digit>, Amplitude> terms(const SparseState& s) {
  std::map<std::vector<Digit>, Amplitude> out;
  for (std::size_t t = 0; t < s.size(); ++t) {
    auto d = s.digits(t);
    out[std::vector<Digit>(d.begin(), d.end())] = s.amplitude(t);
  }
  return out;
}

TEST(SparseStateTest, ZeroStates) {
  const SparseState s(RegisterLayout(3, {{A, RegisterRole::local}, {B, RegisterRole::local}}));
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(terms(s).at({0, 0}), Amplitude(1.0, 0.0));

  const SparseState scalar{RegisterLayout(3)};
  ASSERT_EQ(scalar.size(), 1U);
  EXPECT_EQ(scalar.width(), 0U);

  std::vector<Register> many;
  for (int i = 0; i < 12; ++i) many.push_back({RegisterId("r" + std::to_string(i)), RegisterRole::local});
  const SparseState wide(RegisterLayout(5, many));
  EXPECT_EQ(wide.size(), 1U);
  EXPECT_NEAR(wide.norm_squared(), 1.0, 1e-15);
}

TEST(SparseStateTest, ValidatingConstructor) {
  const RegisterLayout lay(3, {{A, RegisterRole::local}});
  EXPECT_THROW(SparseState(lay, {0, 0}, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}), ParameterError);
  EXPECT_THROW(SparseState(lay, {3}, {1.0}), ParameterError);
  EXPECT_THROW(SparseState(lay, {0, 1}, {1.0, 1.0}), NotNormalizedError);
  EXPECT_THROW(RegisterLayout(3, {{A, RegisterRole::local}, {A, RegisterRole::local}}), RegisterError);
  EXPECT_THROW(RegisterLayout(257), ParameterError);
}

TEST(PrepareTest, Examples) {
  auto s = single(3, "a", {0.0, 1.0, 0.0});
  EXPECT_EQ(terms(s).size(), 1U);
  EXPECT_EQ(terms(s).count({1}), 1U);

  const double h = 1.0 / std::sqrt(2.0);
  s = single(3, "a", {h, h, 0.0});
  ASSERT_EQ(s.size(), 2U);
  for (std::size_t t = 0; t < 2; ++t) EXPECT_NEAR(std::norm(s.amplitude(t)), 0.5, 1e-12);

  EXPECT_THROW(single(3, "a", {1.0, 1.0, 0.0}), NotNormalizedError);
  EXPECT_THROW(prepare(s, A, basis_amplitudes(3, 1)), NotFreshError);
  EXPECT_THROW(single(3, "a", {0.0, 0.0, 0.0, 1.0}), DimensionMismatchError);
}

TEST(EncodeTest, BasisExamples) {
  const PrimeField f(3);
  const RegisterId targets[] = {RegisterId("x0"), RegisterId("x1"), RegisterId("x2")};
  const auto pts = EvalPoints::canonical(f, 3);

  auto s = encode_isometry(single(3, "a", basis_amplitudes(3, 1)), A, targets, 2, pts);
  EXPECT_FALSE(s.layout().contains(A));
  auto t = terms(s);
  ASSERT_EQ(t.size(), 3U);
  for (const auto& tuple : {std::vector<Digit>{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
    ASSERT_EQ(t.count(tuple), 1U);
    EXPECT_NEAR(t[tuple].real(), 1.0 / std::sqrt(3.0), 1e-12);
  }

  t = terms(encode_isometry(single(3, "a", basis_amplitudes(3, 0)), A, targets, 2, pts));
  for (const auto& tuple : {std::vector<Digit>{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}) EXPECT_EQ(t.count(tuple), 1U);
}

TEST(EncodeTest, TrivialThreshold) {
  const PrimeField f(5);
  const RegisterId one[] = {RegisterId("x0")};
  auto s = encode_isometry(single(5, "a", basis_amplitudes(5, 4)), A, one, 1, EvalPoints(f, {3}));
  EXPECT_EQ(terms(s).count({4}), 1U);
  EXPECT_EQ(s.size(), 1U);
}

TEST(EncodeTest, Errors) {
  const PrimeField f(3);
  const RegisterId targets[] = {RegisterId("x0"), RegisterId("x1")};
  auto s = single(3, "a", basis_amplitudes(3, 1));
  EXPECT_THROW(encode_isometry(s, A, targets, 3, EvalPoints::canonical(f, 2)), ParameterError);
  EXPECT_THROW(encode_isometry(s, A, targets, 2, EvalPoints::canonical(f, 3)), DimensionMismatchError);
  EXPECT_THROW(encode_isometry(s, A, targets, 2, EvalPoints::canonical(PrimeField(5), 2)), ModulusMismatchError);
}

TEST(ControlledAddTest, Examples) {
  auto s = controlled_add(three_regs(3, {1, 2, 0}), A, B);
  EXPECT_EQ(terms(s).count({1, 0, 0}), 1U);
  s = controlled_add(three_regs(3, {0, 2, 1}), A, B);
  EXPECT_EQ(terms(s).count({0, 2, 1}), 1U);
  s = controlled_add(three_regs(5, {2, 1, 0}), A, B, PrimeField(5).element(3));
  EXPECT_EQ(terms(s).count({2, 2, 0}), 1U);

  const double h = 1.0 / std::sqrt(2.0);
  auto e = single(2, "a", {h, h});
  const Register rb[] = {{B, RegisterRole::ancilla}};
  e = controlled_add(add_registers(e, rb), A, B);
  const auto t = terms(e);
  ASSERT_EQ(t.size(), 2U);
  EXPECT_EQ(t.count({0, 0}), 1U);
  EXPECT_EQ(t.count({1, 1}), 1U);
  EXPECT_THROW(controlled_add(e, A, A), RegisterError);
}

TEST(ApplyMatrixTest, Examples) {
  const PrimeField f(3);
  const RegisterId ab[] = {A, B};
  auto s = three_regs(3, {1, 2, 2});
  EXPECT_TRUE(states_equal(apply_matrix(s, ab, MatrixFq::identity(f, 2)), s));
  const MatrixFq m(f, {{1, 1}, {0, 1}});
  auto out = apply_matrix(s, ab, m);
  EXPECT_EQ(terms(out).count({1, 0, 2}), 1U);
  EXPECT_TRUE(states_equal(apply_matrix(out, ab, invert(m)), s));
  EXPECT_THROW(apply_matrix(s, ab, MatrixFq(f, {{1, 1}, {2, 2}})), SingularMatrixError);
}

TEST(ShiftRightTest, Examples) {
  const RegisterId abc[] = {A, B, C};
  auto s = shift_right(three_regs(5, {1, 2, 3}), abc);
  // Register a now reads 3, b reads 1, c reads 2.
  const std::vector<Digit> want = {3, 1, 2};
  const auto order = s.layout().indices_of(abc);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(s.digits(0)[order[j]], want[j]);

  const RegisterId just_a[] = {A};
  EXPECT_TRUE(states_equal(shift_right(three_regs(5, {1, 2, 3}), just_a), three_regs(5, {1, 2, 3})));

  auto cyc = three_regs(5, {4, 0, 2});
  for (int i = 0; i < 3; ++i) cyc = shift_right(std::move(cyc), abc);
  EXPECT_TRUE(states_equal(cyc, three_regs(5, {4, 0, 2})));
}

TEST(MoveToFrontTest, Reorders) {
  const RegisterId cb[] = {C, B};
  auto s = move_to_front(three_regs(5, {1, 2, 3}), cb);
  EXPECT_EQ(s.layout()[0].id, C);
  EXPECT_EQ(s.layout()[1].id, B);
  EXPECT_EQ(s.layout()[2].id, A);
  EXPECT_EQ(terms(s).count({3, 2, 1}), 1U);
}

TEST(MeasureTest, BasisStateIsDeterministic) {
  RandomSource rng(1);
  const RegisterId ab[] = {A, B};
  auto m = measure(three_regs(3, {2, 1, 0}), ab, rng);
  ASSERT_EQ(m.outcomes.size(), 2U);
  EXPECT_EQ(m.outcomes[0].value(), 2U);
  EXPECT_EQ(m.outcomes[1].value(), 1U);
  EXPECT_NEAR(m.probability, 1.0, 1e-12);
  EXPECT_TRUE(states_equal(m.collapsed, three_regs(3, {2, 1, 0})));
}

TEST(MeasureTest, BornFrequencies) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto s = single(2, "a", {h, h});
  const RegisterId just_a[] = {A};
  RandomSource rng(2024);
  int zeros = 0;
  for (int i = 0; i < 4000; ++i) zeros += measure(s, just_a, rng).outcomes[0].value() == 0;
  EXPECT_NEAR(zeros / 4000.0, 0.5, 0.03);
}

TEST(MeasureTest, MeasuringEverythingLeavesOneTerm) {
  std::mt19937_64 gen(5);
  auto s = single(5, "a", testing::random_amplitudes(5, gen));
  const Register rb[] = {{B, RegisterRole::ancilla}};
  s = controlled_add(add_registers(s, rb), A, B);
  const RegisterId ab[] = {A, B};
  RandomSource rng(9);
  const auto m = measure(s, ab, rng);
  ASSERT_EQ(m.collapsed.size(), 1U);
  EXPECT_NEAR(std::abs(m.collapsed.amplitude(0)), 1.0, 1e-12);
}

TEST(ReducedDensityTest, ProductStateIsPure) {
  std::mt19937_64 gen(17);
  const auto amps = testing::random_amplitudes(3, gen);
  auto s = single(3, "a", amps);
  const Register rb[] = {{B, RegisterRole::ancilla}};
  s = prepare(add_registers(s, rb), B, testing::random_amplitudes(3, gen));
  const RegisterId just_a[] = {A};
  const auto rho = reduced_density(s, just_a);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  const auto want = testing::projector(amps);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(rho.entries()[i] - want[i]), 0.0, 1e-12);
}

TEST(ReducedDensityTest, BellPairHalfIsMixed) {
  const double h = 1.0 / std::sqrt(2.0);
  auto s = single(2, "a", {h, h});
  const Register rb[] = {{B, RegisterRole::ancilla}};
  s = controlled_add(add_registers(s, rb), A, B);
  const RegisterId just_a[] = {A};
  const auto rho = reduced_density(s, just_a);
  EXPECT_LT(rho.max_abs_diff(DensityMatrix::maximally_mixed(2)), 1e-12);
}

TEST(ReducedDensityTest, SingleShareIsMaximallyMixed) {
  const PrimeField f(3);
  const RegisterId targets[] = {RegisterId("x0"), RegisterId("x1"), RegisterId("x2")};
  for (std::uint64_t secret = 0; secret < 3; ++secret) {
    auto s = encode_isometry(single(3, "a", basis_amplitudes(3, secret)), A, targets, 2,
                             EvalPoints::canonical(f, 3));
    for (const auto& t : targets) {
      const RegisterId one[] = {t};
      EXPECT_LT(reduced_density(s, one).max_abs_diff(DensityMatrix::maximally_mixed(3)), 1e-12);
    }
  }
}

TEST(ReducedDensityTest, GuardsLargeSubsystems) {
  std::vector<Register> regs;
  std::vector<RegisterId> ids;
  for (int i = 0; i < 6; ++i) {
    ids.emplace_back("r" + std::to_string(i));
    regs.push_back({ids.back(), RegisterRole::local});
  }
  const SparseState s(RegisterLayout(5, regs));
  EXPECT_THROW(reduced_density(s, ids), SubsystemTooLargeError);
}

TEST(StatesEqualTest, Examples) {
  std::mt19937_64 gen(23);
  const auto amps = testing::random_amplitudes(3, gen);
  const auto s = single(3, "a", amps);
  EXPECT_TRUE(states_equal(s, s));
  std::vector<Amplitude> flipped;
  for (auto a : amps) flipped.push_back(-a);
  EXPECT_TRUE(states_equal(s, single(3, "a", flipped)));
  std::vector<Amplitude> rotated;
  for (auto a : amps) rotated.push_back(a * std::polar(1.0, 0.7));
  EXPECT_TRUE(states_equal(s, single(3, "a", rotated)));
  EXPECT_FALSE(states_equal(single(3, "a", basis_amplitudes(3, 0)), single(3, "a", basis_amplitudes(3, 1))));
  EXPECT_THROW(phase_aligned_distance(s, single(3, "b", amps)), LayoutMismatchError);
}

TEST(DiscardTest, Examples) {
  std::mt19937_64 gen(29);
  const auto amps = testing::random_amplitudes(3, gen);
  const Register rb[] = {{B, RegisterRole::ancilla}};
  auto s = add_registers(single(3, "a", amps), rb);
  EXPECT_TRUE(states_equal(discard_register(s, B), single(3, "a", amps)));

  const PrimeField f(3);
  const RegisterId targets[] = {RegisterId("x0"), RegisterId("x1"), RegisterId("x2")};
  auto enc = encode_isometry(single(3, "a", basis_amplitudes(3, 1)), A, targets, 2, EvalPoints::canonical(f, 3));
  EXPECT_THROW(discard_register(enc, targets[2]), EntangledDiscardError);

  auto scalar = discard_register(single(3, "a", basis_amplitudes(3, 2)), A);
  EXPECT_EQ(scalar.width(), 0U);
  EXPECT_EQ(scalar.size(), 1U);
}

TEST(DumpTest, CanonicalAndOrderIndependent) {
  const double h = 1.0 / std::sqrt(2.0);
  const RegisterLayout lay(3, {{A, RegisterRole::local}, {B, RegisterRole::local}});
  const SparseState x(lay, {2, 1, 0, 2}, {Amplitude(h, 0.0), Amplitude(0.0, -h)});
  const SparseState y(lay, {0, 2, 2, 1}, {Amplitude(0.0, -h), Amplitude(h, 0.0)});
  EXPECT_EQ(dump(x), "0,2 0.000000000000,-0.707106781187\n2,1 0.707106781187,0.000000000000\n");
  EXPECT_EQ(dump(x), dump(y));
  EXPECT_EQ(checksum(x), checksum(y));
  EXPECT_NE(checksum(x), checksum(SparseState(lay)));
}

TEST(KernelThreadsTest, ResultsDoNotDependOnThreadCount) {
  // Large enough to cross the parallel threshold.
  const PrimeField f(7);
  std::vector<RegisterId> targets;
  for (int j = 0; j < 7; ++j) targets.emplace_back("x" + std::to_string(j));
  std::mt19937_64 gen(31);
  auto base = single(7, "a", testing::random_amplitudes(7, gen));
  auto run = [&](int threads) {
    set_kernel_threads(threads);
    auto s = encode_isometry(base, A, targets, 5, EvalPoints::canonical(f, 7));
    s = controlled_add(std::move(s), targets[0], targets[1]);
    const RegisterId three[] = {targets[2], targets[3], targets[4]};
    s = apply_matrix(std::move(s), three, vandermonde(EvalPoints(f, {1, 2, 3})));
    return s;
  };
  const auto one = run(1);
  const auto four = run(4);
  set_kernel_threads(0);
  EXPECT_GT(one.size(), 4096U);
  EXPECT_EQ(dump(one), dump(four));
  const RegisterId pair[] = {targets[5], targets[6]};
  EXPECT_EQ(reduced_density(one, pair).entries(), reduced_density(four, pair).entries());
}

}  // namespace
}  // namespace qss
