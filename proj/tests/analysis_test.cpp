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

#include "qss/analysis.hpp"

#include <gtest/gtest.h>

#include "qss/density.hpp"
#include "qss/errors.hpp"
#include "support.hpp"

namespace qss {
namespace {

const Stage kAllStages[] = {Stage::encoded,     Stage::distributed,    Stage::decoded,  Stage::shifted,
                            Stage::regenerated, Stage::rows_recovered, Stage::reordered};

SchemeParams p23() { return SchemeParams(2, 3, PrimeField(3)); }

TEST(OracleTest, DistributedLocalRegistersHoldSummedEvaluations) {
  const auto s = oracle_state({Stage::distributed, p23(), {1, 2, 0}, {}});
  EXPECT_EQ(s.size(), 27U);
  const auto& lay = s.layout();
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto d = s.digits(t);
    for (std::size_t j = 0; j < 3; ++j) {
      unsigned sum = 0;
      for (std::size_t i = 0; i < 3; ++i) sum += d[lay.index_of(common_register(i, j))];
      EXPECT_EQ(d[lay.index_of(local_register(j))], sum % 3);
    }
    // Each row is a degree-1 polynomial with top coefficient s_i at points 0, 1, 2.
    const std::uint64_t secrets[] = {1, 2, 0};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto c0 = d[lay.index_of(common_register(i, 0))];
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(d[lay.index_of(common_register(i, j))], (c0 + secrets[i] * j) % 3);
      }
    }
  }
}

TEST(OracleTest, ReorderedFrontIsConstantSum) {
  const auto s = oracle_state({Stage::reordered, p23(), {1, 2, 0}, {}});
  EXPECT_EQ(s.layout()[0].id, local_register(0));
  EXPECT_EQ(s.layout()[1].id, common_register(0, 0));
  for (std::size_t t = 0; t < s.size(); ++t) {
    EXPECT_EQ(s.digits(t)[0], 0);
    EXPECT_EQ(s.digits(t)[1], 1);
    EXPECT_EQ(s.digits(t)[2], 2);
    EXPECT_EQ(s.digits(t)[3], 0);
  }
}

TEST(OracleTest, UnitNormEverywhere) {
  for (auto stage : kAllStages) {
    for (std::uint64_t code = 0; code < 27; ++code) {
      const auto s = oracle_state({stage, p23(), {code % 3, code / 3 % 3, code / 9}, {}});
      EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
    }
    const auto big = oracle_state({stage, SchemeParams(3, 4, PrimeField(5)), {1, 4, 0, 3}, {1, 2, 3}});
    EXPECT_NEAR(big.norm_squared(), 1.0, 1e-9);
  }
}

TEST(OracleTest, FrontRegistersFactorOut) {
  const auto s = oracle_state({Stage::reordered, p23(), {2, 0, 2}, {1, 2}});
  const auto ids = s.layout().ids();
  const std::vector<RegisterId> front(ids.begin(), ids.begin() + 4);
  EXPECT_EQ(front[0], local_register(1));
  EXPECT_NEAR(reduced_density(s, front).purity(), 1.0, 1e-9);
}

TEST(OracleTest, TrivialThresholdDegenerates) {
  // k = 1: one term, every share holds its own secret, decoding is the identity.
  const SchemeParams p(1, 1, PrimeField(3));
  const auto decoded = oracle_state({Stage::decoded, p, {2}, {}});
  ASSERT_EQ(decoded.size(), 1U);
  EXPECT_EQ(decoded.digits(0)[decoded.layout().index_of(local_register(0))], 2);
}

TEST(OracleTest, ScaleGuardAndValidation) {
  EXPECT_THROW(oracle_state({Stage::encoded, SchemeParams(3, 5, PrimeField(5)), {0, 0, 0, 0, 0}, {}}),
               ScaleGuardError);
  EXPECT_THROW(oracle_state({Stage::encoded, p23(), {0, 0}, {}}), ParameterError);
  EXPECT_THROW(oracle_state({Stage::encoded, p23(), {0, 0, 3}, {}}), ParameterError);
  EXPECT_THROW(oracle_state({Stage::decoded, p23(), {0, 0, 0}, {0}}), SubsetError);
}

TEST(SecrecyScanTest, Examples) {
  const auto r23 = secrecy_scan(p23(), 1);
  EXPECT_EQ(r23.subsets_checked, 3U);
  EXPECT_LT(r23.max_deviation, 1e-9);
  EXPECT_LT(r23.max_mixed_distance, 1e-9);

  const auto r35 = secrecy_scan(SchemeParams(3, 5, PrimeField(5)), 2);
  EXPECT_EQ(r35.subsets_checked, 10U);
  EXPECT_LT(r35.max_deviation, 1e-9);

  const auto r0 = secrecy_scan(p23(), 0);
  EXPECT_EQ(r0.max_deviation, 0.0);

  EXPECT_THROW(secrecy_scan(p23(), 2), ParameterError);
}

// Sanity check on the metric itself: k shares do depend on the secret.
TEST(SecrecyScanTest, DetectsLeakageAtThreshold) {
  const SchemeParams p(2, 3, PrimeField(3));
  std::vector<SparseState> enc;
  for (std::uint64_t s = 0; s < 3; ++s) {
    enc.push_back(split(testing::single(3, "s", testing::basis_amplitudes(3, s)), RegisterId("s"), p).state);
  }
  const RegisterId two[] = {RegisterId("s.0"), RegisterId("s.1")};
  EXPECT_GT(reduced_density(enc[0], two).max_abs_diff(reduced_density(enc[1], two)), 0.1);
}

TEST(CoalitionSecrecyTest, BelowThresholdLearnsNothing) {
  for (std::size_t j = 0; j < 3; ++j) {
    const auto r = coalition_secrecy(p23(), {j});
    EXPECT_EQ(r.secrets_compared, 9U);
    EXPECT_LT(r.max_deviation, 1e-9);
    EXPECT_LT(r.max_mixed_distance, 1e-9);
  }
  // (2,2) leaves a quarantined share out of every coalition.
  const auto r22 = coalition_secrecy(SchemeParams(2, 2, PrimeField(3)), {0});
  EXPECT_LT(r22.max_deviation, 1e-9);
  EXPECT_THROW(coalition_secrecy(p23(), {0, 1}), ParameterError);
}

}  // namespace
}  // namespace qss
