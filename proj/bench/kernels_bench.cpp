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

// Sparse OpenMP kernels against the std::map reference engine.
//
//   build/bench/kernels_bench --benchmark_filter=controlled_add
//
// The reference reduced_density is quadratic in the term count, so encode and
// reduced_density run on a single encoded secret. The Sparse benchmarks take the kernel thread count as their argument; 0 means
// every available thread.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qss/linalg.hpp"
#include "qss/qstate.hpp"
#include "qss/reference_state.hpp"

namespace {

using namespace qss;
using reference::MapState;

constexpr std::uint64_t kQ = 7;
constexpr std::size_t kK = 3;
constexpr std::size_t kN = 5;

std::vector<Amplitude> amplitudes(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Amplitude> a(kQ);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return a;
}

std::vector<RegisterId> shares(const std::string& prefix) {
  std::vector<RegisterId> out;
  for (std::size_t j = 0; j < kN; ++j) out.emplace_back(prefix + std::to_string(j));
  return out;
}

std::vector<std::string> names(const std::vector<RegisterId>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(id.name());
  return out;
}

std::vector<std::uint64_t> raw_points() {
  std::vector<std::uint64_t> p(kN);
  std::iota(p.begin(), p.end(), std::uint64_t{0});
  return p;
}

SparseState secret(const std::string& name, std::uint64_t seed) {
  const Register r[] = {{RegisterId(name), RegisterRole::secret}};
  return prepare(add_registers(SparseState(RegisterLayout(kQ)), r), RegisterId(name), amplitudes(seed));
}

// One encoded secret: q^k = 343 terms.
SparseState small_workload() {
  const PrimeField f(kQ);
  return encode_isometry(secret("a", 1), RegisterId("a"), shares("x"), kK, EvalPoints::canonical(f, kN));
}

// Two independently encoded secrets: q^(2k) = 117649 terms.
SparseState workload() {
  const PrimeField f(kQ);
  const auto pts = EvalPoints::canonical(f, kN);
  auto st = small_workload();
  const Register b[] = {{RegisterId("b"), RegisterRole::secret}};
  st = prepare(add_registers(std::move(st), b), RegisterId("b"), amplitudes(2));
  return encode_isometry(std::move(st), RegisterId("b"), shares("y"), kK, pts);
}

MatrixFq mixing_matrix() {
  const PrimeField f(kQ);
  return invert(vandermonde(EvalPoints::canonical(f, kN)));
}

void set_threads(const benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  set_kernel_threads(t == 0 ? omp_get_max_threads() : t);
}

void BM_SparseEncode(benchmark::State& state) {
  set_threads(state);
  const PrimeField f(kQ);
  const auto pts = EvalPoints::canonical(f, kN);
  const auto base = small_workload();
  const Register c[] = {{RegisterId("c"), RegisterRole::secret}};
  const auto prepared = prepare(add_registers(base, c), RegisterId("c"), amplitudes(3));
  for (auto _ : state) {
    auto out = encode_isometry(prepared, RegisterId("c"), shares("z"), 2, pts);
    benchmark::DoNotOptimize(out);
  }
  state.counters["terms"] = static_cast<double>(prepared.size() * kQ);
}

void BM_MapEncode(benchmark::State& state) {
  const auto base = small_workload();
  const Register c[] = {{RegisterId("c"), RegisterRole::secret}};
  const auto prepared = MapState::from(prepare(add_registers(base, c), RegisterId("c"), amplitudes(3)));
  const auto targets = names(shares("z"));
  for (auto _ : state) {
    auto m = prepared;
    m.encode("c", targets, 2, raw_points());
    benchmark::DoNotOptimize(m);
  }
}

void BM_SparseControlledAdd(benchmark::State& state) {
  set_threads(state);
  const auto st = workload();
  for (auto _ : state) {
    auto out = controlled_add(st, RegisterId("x0"), RegisterId("y0"));
    benchmark::DoNotOptimize(out);
  }
  state.counters["terms"] = static_cast<double>(st.size());
}

void BM_MapControlledAdd(benchmark::State& state) {
  const auto st = MapState::from(workload());
  for (auto _ : state) {
    auto m = st;
    m.controlled_add("x0", "y0");
    benchmark::DoNotOptimize(m);
  }
}

void BM_SparseApplyMatrix(benchmark::State& state) {
  set_threads(state);
  const auto st = workload();
  const auto m = mixing_matrix();
  const auto regs = shares("x");
  for (auto _ : state) {
    auto out = apply_matrix(st, regs, m);
    benchmark::DoNotOptimize(out);
  }
}

void BM_MapApplyMatrix(benchmark::State& state) {
  const auto st = MapState::from(workload());
  const auto m = mixing_matrix();
  std::vector<std::vector<std::uint64_t>> raw(kN, std::vector<std::uint64_t>(kN));
  for (std::size_t r = 0; r < kN; ++r) {
    for (std::size_t c = 0; c < kN; ++c) raw[r][c] = m.raw(r, c);
  }
  const auto regs = names(shares("x"));
  for (auto _ : state) {
    auto copy = st;
    copy.apply_matrix(regs, raw);
    benchmark::DoNotOptimize(copy);
  }
}

void BM_SparseReducedDensity(benchmark::State& state) {
  set_threads(state);
  const auto st = small_workload();
  const RegisterId regs[] = {RegisterId("x0"), RegisterId("x1")};
  for (auto _ : state) {
    auto rho = reduced_density(st, regs);
    benchmark::DoNotOptimize(rho);
  }
}

void BM_MapReducedDensity(benchmark::State& state) {
  const auto st = MapState::from(small_workload());
  for (auto _ : state) {
    auto rho = st.reduced_density({"x0", "x1"});
    benchmark::DoNotOptimize(rho);
  }
}

}  // namespace

BENCHMARK(BM_SparseEncode)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapEncode)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseControlledAdd)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapControlledAdd)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseApplyMatrix)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapApplyMatrix)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseReducedDensity)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapReducedDensity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
