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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qss/density.hpp"
#include "qss/errors.hpp"

namespace qss {

namespace {

// Plain integer helpers; the oracle deliberately avoids the field and matrix
// types used by the simulator.
std::uint64_t eval_poly(const std::vector<std::uint64_t>& coeffs, std::uint64_t x, std::uint64_t q) {
  std::uint64_t acc = 0;
  std::uint64_t power = 1;
  for (auto c : coeffs) {
    acc = (acc + c * power) % q;
    power = (power * x) % q;
  }
  return acc;
}

struct OracleGeometry {
  std::size_t k, n, shares;
  std::uint64_t q;
  std::vector<std::uint64_t> points;  // all 2k-1 share points
  std::vector<std::size_t> sub;       // sorted subset
  std::vector<std::size_t> others;    // every share index outside the subset
};

OracleGeometry geometry(const OracleExpr& expr) {
  OracleGeometry g;
  g.k = expr.params.k();
  g.n = expr.params.n();
  g.q = expr.params.field().modulus();
  g.shares = 2 * g.k - 1;
  if (expr.secrets.size() != g.n) {
    throw ParameterError("oracle needs " + std::to_string(g.n) + " secrets, got " +
                         std::to_string(expr.secrets.size()));
  }
  for (auto s : expr.secrets) {
    if (s >= g.q) throw ParameterError("oracle secret digit " + std::to_string(s) + " is not below q");
  }
  for (const auto& x : expr.params.points()) g.points.push_back(x.value());
  for (std::uint64_t v = 0; g.points.size() < g.shares && v < g.q; ++v) {
    if (std::find(g.points.begin(), g.points.end(), v) == g.points.end()) g.points.push_back(v);
  }
  if (g.points.size() < g.shares) throw ParameterError("field too small for 2k-1 share points");

  g.sub = expr.subset;
  if (g.sub.empty()) {
    g.sub.resize(g.k);
    std::iota(g.sub.begin(), g.sub.end(), std::size_t{0});
  }
  std::sort(g.sub.begin(), g.sub.end());
  if (g.sub.size() != g.k || std::adjacent_find(g.sub.begin(), g.sub.end()) != g.sub.end() ||
      g.sub.back() >= g.n) {
    throw SubsetError("oracle subset must be k distinct participants");
  }
  for (std::size_t j = 0; j < g.shares; ++j) {
    if (!std::binary_search(g.sub.begin(), g.sub.end(), j)) g.others.push_back(j);
  }
  return g;
}

std::size_t r_pos(std::size_t j) { return j; }
std::size_t c_pos(const OracleGeometry& g, std::size_t i, std::size_t j) { return g.n + i * g.shares + j; }

bool at_or_after(Stage s, Stage ref) { return static_cast<int>(s) >= static_cast<int>(ref); }

}  // namespace

std::vector<RegisterId> oracle_registers(const OracleExpr& expr) {
  const auto g = geometry(expr);
  std::vector<RegisterId> regs;
  if (expr.stage == Stage::reordered) {
    regs.push_back(local_register(g.sub.front()));
    for (std::size_t i = 0; i < g.n; ++i) regs.push_back(common_register(i, g.sub.front()));
  }
  auto push = [&](RegisterId id) {
    if (std::find(regs.begin(), regs.end(), id) == regs.end()) regs.push_back(std::move(id));
  };
  for (std::size_t j = 0; j < g.n; ++j) push(local_register(j));
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.shares; ++j) push(common_register(i, j));
  }
  return regs;
}

SparseState oracle_state(const OracleExpr& expr) {
  const auto g = geometry(expr);
  const std::size_t free_per_dealer = g.k - 1;
  const double terms_d = std::pow(static_cast<double>(g.q), static_cast<double>(g.n * free_per_dealer));
  if (terms_d > kOracleMaxTerms) {
    throw ScaleGuardError("oracle would enumerate " + std::to_string(terms_d) + " terms (limit 1e6)");
  }
  const auto terms = static_cast<std::size_t>(std::llround(terms_d));

  // Oracle layout is fixed; the reordered stage is handled by permuting at the end.
  const std::size_t width = g.n + g.n * g.shares;
  std::vector<Digit> digits(terms * width, 0);
  const Amplitude amp(1.0 / std::sqrt(terms_d), 0.0);

  std::vector<std::vector<std::uint64_t>> c(g.n, std::vector<std::uint64_t>(g.k, 0));
  for (std::size_t t = 0; t < terms; ++t) {
    std::size_t rest = t;
    for (std::size_t i = 0; i < g.n; ++i) {
      for (std::size_t a = 0; a < free_per_dealer; ++a) {
        c[i][a] = rest % g.q;
        rest /= g.q;
      }
      c[i][g.k - 1] = expr.secrets[i];
    }
    Digit* row = digits.data() + t * width;
    auto sum_eval = [&](std::uint64_t x) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < g.n; ++i) acc = (acc + eval_poly(c[i], x, g.q)) % g.q;
      return acc;
    };
    auto sum_coeff = [&](std::size_t a) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < g.n; ++i) acc = (acc + c[i][a]) % g.q;
      return acc;
    };

    for (std::size_t i = 0; i < g.n; ++i) {
      for (std::size_t j = 0; j < g.shares; ++j) {
        row[c_pos(g, i, j)] = static_cast<Digit>(eval_poly(c[i], g.points[j], g.q));
      }
    }
    if (expr.stage == Stage::encoded) continue;

    for (std::size_t j = 0; j < g.n; ++j) row[r_pos(j)] = static_cast<Digit>(sum_eval(g.points[j]));

    switch (expr.stage) {
      case Stage::decoded:
        for (std::size_t a = 0; a < g.k; ++a) row[r_pos(g.sub[a])] = static_cast<Digit>(sum_coeff(a));
        break;
      case Stage::shifted:
        row[r_pos(g.sub[0])] = static_cast<Digit>(sum_coeff(g.k - 1));
        for (std::size_t a = 1; a < g.k; ++a) row[r_pos(g.sub[a])] = static_cast<Digit>(sum_coeff(a - 1));
        break;
      default:
        break;
    }
    if (at_or_after(expr.stage, Stage::regenerated)) {
      row[r_pos(g.sub[0])] = static_cast<Digit>(sum_coeff(g.k - 1));
      for (std::size_t a = 1; a < g.k; ++a) {
        row[r_pos(g.sub[a])] = static_cast<Digit>(sum_eval(g.points[g.others[a - 1]]));
      }
    }
    if (at_or_after(expr.stage, Stage::rows_recovered)) {
      for (std::size_t i = 0; i < g.n; ++i) {
        row[c_pos(g, i, g.sub[0])] = static_cast<Digit>(expr.secrets[i]);
        for (std::size_t a = 1; a < g.k; ++a) {
          row[c_pos(g, i, g.sub[a])] = static_cast<Digit>(eval_poly(c[i], g.points[g.others[a - 1]], g.q));
        }
      }
    }
  }

  std::vector<Register> regs;
  for (std::size_t j = 0; j < g.n; ++j) regs.push_back({local_register(j), RegisterRole::local});
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.shares; ++j) regs.push_back({common_register(i, j), RegisterRole::common});
  }
  const auto order = oracle_registers(expr);
  std::vector<std::size_t> src(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    src[p] = static_cast<std::size_t>(
        std::find_if(regs.begin(), regs.end(), [&](const Register& r) { return r.id == order[p]; }) -
        regs.begin());
  }
  std::vector<Digit> permuted(digits.size());
  for (std::size_t t = 0; t < terms; ++t) {
    for (std::size_t p = 0; p < width; ++p) permuted[t * width + p] = digits[t * width + src[p]];
  }
  std::vector<Register> ordered_regs;
  for (auto s : src) ordered_regs.push_back(regs[s]);

  return SparseState(RegisterLayout(g.q, std::move(ordered_regs)), std::move(permuted),
                     std::vector<Amplitude>(terms, amp));
}

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(r);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  if (r > n) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

void check_dim(std::uint64_t q, std::size_t width) {
  double dim = 1.0;
  for (std::size_t i = 0; i < width; ++i) dim *= static_cast<double>(q);
  if (dim > static_cast<double>(kMaxSubsystemDim)) {
    throw ScaleGuardError("subsystem dimension " + std::to_string(dim) + " exceeds 1e4");
  }
}

}  // namespace

SecrecyReport secrecy_scan(const SchemeParams& params, std::size_t subset_size) {
  const std::size_t k = params.k();
  const std::size_t n = params.n();
  const std::uint64_t q = params.field().modulus();
  if (subset_size >= k) {
    throw ParameterError("secrecy scan needs subset size < k=" + std::to_string(k));
  }
  SecrecyReport report;
  report.k = k;
  report.n = n;
  report.q = q;
  report.subset_size = subset_size;
  report.secrets_compared = q;
  check_dim(q, subset_size);

  std::vector<SparseState> encoded;
  std::vector<RegisterId> shares;
  for (std::uint64_t s = 0; s < q; ++s) {
    const RegisterId secret("S");
    const Register reg[] = {{secret, RegisterRole::secret}};
    auto state = add_registers(SparseState(RegisterLayout(q)), reg);
    std::vector<Amplitude> amps(q, Amplitude(0.0, 0.0));
    amps[s] = 1.0;
    state = prepare(std::move(state), secret, amps);
    auto res = split(std::move(state), secret, params);
    shares = res.bundle.registers();
    encoded.push_back(std::move(res.state));
  }

  const auto subsets = combinations(n, subset_size);
  report.subsets_checked = subsets.size();
  report.description = "all " + std::to_string(subsets.size()) + " subsets of " + std::to_string(subset_size) +
                       " out of " + std::to_string(n) + " shares, " + std::to_string(q) + " basis secrets";
  if (subset_size == 0) return report;

  double max_dev = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(subsets.size());
#pragma omp parallel for schedule(dynamic) reduction(max : max_dev)
  for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
    std::vector<RegisterId> regs;
    for (auto j : subsets[static_cast<std::size_t>(idx)]) regs.push_back(shares[j]);
    const auto base = reduced_density(encoded[0], regs);
    for (std::uint64_t s = 1; s < q; ++s) max_dev = std::max(max_dev, base.max_abs_diff(reduced_density(encoded[s], regs)));
  }
  report.max_deviation = max_dev;

  const auto mixed = DensityMatrix::maximally_mixed(q);
  double max_mixed = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const RegisterId one[] = {shares[j]};
    for (const auto& st : encoded) max_mixed = std::max(max_mixed, mixed.max_abs_diff(reduced_density(st, one)));
  }
  report.max_mixed_distance = max_mixed;
  return report;
}

SecrecyReport coalition_secrecy(const SchemeParams& params, std::vector<std::size_t> coalition) {
  const std::size_t k = params.k();
  const std::size_t n = params.n();
  const std::uint64_t q = params.field().modulus();
  std::sort(coalition.begin(), coalition.end());
  if (coalition.size() >= k || std::adjacent_find(coalition.begin(), coalition.end()) != coalition.end() ||
      (!coalition.empty() && coalition.back() >= n)) {
    throw ParameterError("coalition must be fewer than k distinct participants");
  }
  const ProtocolConfig config(params, Scheme::scheme2, SecretMode::basis, 0);

  std::vector<RegisterId> held;
  for (auto j : coalition) {
    held.push_back(local_register(j));
    for (std::size_t i = 0; i < n; ++i) held.push_back(common_register(i, j));
  }
  check_dim(q, held.size());

  std::vector<std::size_t> outsiders;
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::binary_search(coalition.begin(), coalition.end(), j)) outsiders.push_back(j);
  }
  std::size_t combos = 1;
  for (std::size_t i = 0; i < outsiders.size(); ++i) combos *= q;

  SecrecyReport report;
  report.k = k;
  report.n = n;
  report.q = q;
  report.subset_size = coalition.size();
  report.subsets_checked = 1;
  report.secrets_compared = combos;
  report.description = "coalition {";
  for (std::size_t i = 0; i < coalition.size(); ++i) report.description += (i ? "," : "") + std::to_string(coalition[i]);
  report.description += "} after distribution, " + std::to_string(combos) + " outsider secret vectors";
  if (coalition.empty()) return report;

  auto density_for = [&](std::size_t combo) {
    std::vector<ParticipantSpec> specs;
    for (std::size_t j = 0; j < n; ++j) specs.push_back(ParticipantSpec::basis(j, 0));
    for (auto j : outsiders) {
      specs[j] = ParticipantSpec::basis(j, combo % q);
      combo /= q;
    }
    auto gen = run_generation(config, specs);
    return reduced_density(gen.state, held);
  };

  const auto base = density_for(0);
  double max_dev = 0.0;
  for (std::size_t combo = 1; combo < combos; ++combo) {
    max_dev = std::max(max_dev, base.max_abs_diff(density_for(combo)));
  }
  report.max_deviation = max_dev;

  // A single delivered share on its own looks maximally mixed.
  const auto mixed = DensityMatrix::maximally_mixed(q);
  const RegisterId one[] = {common_register(outsiders.front(), coalition.front())};
  std::vector<ParticipantSpec> specs;
  for (std::size_t j = 0; j < n; ++j) specs.push_back(ParticipantSpec::basis(j, j % q));
  auto gen = run_generation(config, specs);
  report.max_mixed_distance = mixed.max_abs_diff(reduced_density(gen.state, one));
  return report;
}

}  // namespace qss
