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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "qss/errors.hpp"

namespace qss {

namespace {

// Below this many terms the OpenMP fork/join costs more than the loop.
constexpr std::size_t kParallelThreshold = 1U << 12U;

int g_kernel_threads = 0;  // 0: OpenMP default

int thread_count() { return g_kernel_threads > 0 ? g_kernel_threads : omp_get_max_threads(); }

void require_distinct(std::span<const RegisterId> regs, const char* what) {
  std::vector<RegisterId> sorted(regs.begin(), regs.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw RegisterError(std::string(what) + ": duplicate register in list");
  }
}

bool lex_less(std::span<const Digit> a, std::span<const Digit> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RegisterId local_register(std::size_t participant) {
  return RegisterId("R" + std::to_string(participant));
}

RegisterId common_register(std::size_t dealer, std::size_t holder) {
  return RegisterId("C" + std::to_string(dealer) + "_" + std::to_string(holder));
}

RegisterId private_register(std::size_t participant) {
  return RegisterId("S" + std::to_string(participant));
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::uint64_t dimension, std::vector<Register> registers)
    : q_(dimension), regs_(std::move(registers)) {
  if (q_ < 2 || q_ > 256) {
    throw ParameterError("register dimension must be in [2, 256], got " + std::to_string(q_));
  }
  std::vector<RegisterId> ids = this->ids();
  require_distinct(ids, "register layout");
}

std::vector<RegisterId> RegisterLayout::ids() const {
  std::vector<RegisterId> out;
  out.reserve(regs_.size());
  for (const auto& r : regs_) out.push_back(r.id);
  return out;
}

std::optional<std::size_t> RegisterLayout::find(const RegisterId& id) const {
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t RegisterLayout::index_of(const RegisterId& id) const {
  auto pos = find(id);
  if (!pos) throw RegisterError("unknown register '" + id.name() + "'");
  return *pos;
}

std::vector<std::size_t> RegisterLayout::indices_of(std::span<const RegisterId> ids) const {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(index_of(id));
  return out;
}

RegisterLayout RegisterLayout::with_appended(std::span<const Register> regs) const {
  std::vector<Register> next = regs_;
  next.insert(next.end(), regs.begin(), regs.end());
  RegisterLayout out(q_, std::move(next));
  out.version_ = version_ + 1;
  return out;
}

RegisterLayout RegisterLayout::without(std::size_t pos) const {
  std::vector<Register> next = regs_;
  next.erase(next.begin() + static_cast<std::ptrdiff_t>(pos));
  RegisterLayout out(q_, std::move(next));
  out.version_ = version_ + 1;
  return out;
}

RegisterLayout RegisterLayout::permuted(std::span<const std::size_t> order) const {
  if (order.size() != regs_.size()) throw DimensionMismatchError("layout permutation size mismatch");
  std::vector<Register> next;
  next.reserve(order.size());
  for (auto o : order) next.push_back(regs_.at(o));
  RegisterLayout out(q_, std::move(next));
  out.version_ = version_ + 1;
  return out;
}

RegisterLayout RegisterLayout::relabeled(std::vector<Register> regs) const {
  if (regs.size() != regs_.size()) throw DimensionMismatchError("relabel size mismatch");
  RegisterLayout out(q_, std::move(regs));
  out.version_ = version_ + 1;
  return out;
}

bool RegisterLayout::same_registers(const RegisterLayout& other) const {
  if (q_ != other.q_ || regs_.size() != other.regs_.size()) return false;
  auto a = ids();
  auto b = other.ids();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// ---------------------------------------------------------------------------
// SparseState

namespace detail {

struct StateAccess {
  static std::vector<Digit>& digits(SparseState& s) { return s.digits_; }
  static std::vector<Amplitude>& amps(SparseState& s) { return s.amps_; }
  static RegisterLayout& layout(SparseState& s) { return s.layout_; }
  static SparseState make(RegisterLayout layout, std::vector<Digit> digits,
                          std::vector<Amplitude> amps) {
    return SparseState(std::move(layout), std::move(digits), std::move(amps), true);
  }
};

}  // namespace detail

using detail::StateAccess;

SparseState::SparseState(RegisterLayout layout)
    : layout_(std::move(layout)), digits_(layout_.size(), 0), amps_{Amplitude(1.0, 0.0)} {}

SparseState::SparseState(RegisterLayout layout, std::vector<Digit> digits, std::vector<Amplitude> amps,
                         bool)
    : layout_(std::move(layout)), digits_(std::move(digits)), amps_(std::move(amps)) {}

SparseState::SparseState(RegisterLayout layout, std::vector<Digit> digits,
                         std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), digits_(std::move(digits)), amps_(std::move(amplitudes)) {
  const std::size_t w = layout_.size();
  if (digits_.size() != w * amps_.size()) {
    throw DimensionMismatchError("digit buffer does not match layout width times term count");
  }
  for (auto d : digits_) {
    if (d >= layout_.dimension()) throw ParameterError("digit out of range for dimension");
  }
  // Drop negligible terms before checking uniqueness and norm.
  std::size_t keep = 0;
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    if (std::abs(amps_[t]) < kPruneThreshold) continue;
    if (keep != t) {
      std::copy_n(digits_.begin() + static_cast<std::ptrdiff_t>(t * w), w,
                  digits_.begin() + static_cast<std::ptrdiff_t>(keep * w));
      amps_[keep] = amps_[t];
    }
    ++keep;
  }
  amps_.resize(keep);
  digits_.resize(keep * w);
  auto order = canonical_order();
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (std::ranges::equal(this->digits(order[i - 1]), this->digits(order[i]))) {
      throw ParameterError("duplicate basis tuple in state");
    }
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw NotNormalizedError("state norm^2 is " + std::to_string(norm_squared()));
  }
}

double SparseState::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

std::vector<std::size_t> SparseState::canonical_order() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return lex_less(digits(a), digits(b)); });
  return order;
}

Amplitude SparseState::amplitude_of(std::span<const Digit> tuple) const {
  if (tuple.size() != width()) throw DimensionMismatchError("tuple width mismatch");
  for (std::size_t t = 0; t < size(); ++t) {
    if (std::ranges::equal(digits(t), tuple)) return amps_[t];
  }
  return {0.0, 0.0};
}

void set_kernel_threads(int threads) { g_kernel_threads = threads; }
int kernel_threads() { return thread_count(); }

// ---------------------------------------------------------------------------
// Kernels

namespace {

/// Applies `fn(Digit*)` to every term's digit row in parallel.
template <typename Fn>
void for_each_term(SparseState& state, Fn&& fn) {
  auto& digits = StateAccess::digits(state);
  const std::size_t w = state.width();
  const auto count = static_cast<std::int64_t>(state.size());
  Digit* base = digits.data();
#pragma omp parallel for schedule(static) num_threads(thread_count()) \
    if (static_cast<std::size_t>(count) > kParallelThreshold)
  for (std::int64_t t = 0; t < count; ++t) {
    fn(base + static_cast<std::size_t>(t) * w);
  }
}

bool register_is_fresh(const SparseState& state, std::size_t pos) {
  const std::size_t w = state.width();
  const auto digits = state.raw_digits();
  for (std::size_t t = 0; t < state.size(); ++t) {
    if (digits[t * w + pos] != 0) return false;
  }
  return true;
}

/// Copies every term without column `pos`.
std::vector<Digit> drop_column(const SparseState& state, std::size_t pos) {
  const std::size_t w = state.width();
  std::vector<Digit> out(state.size() * (w - 1));
  const auto in = state.raw_digits();
  for (std::size_t t = 0; t < state.size(); ++t) {
    const Digit* row = in.data() + t * w;
    Digit* dst = out.data() + t * (w - 1);
    std::copy_n(row, pos, dst);
    std::copy(row + pos + 1, row + w, dst + pos);
  }
  return out;
}

SparseState remove_fresh_register(SparseState state, std::size_t pos) {
  auto digits = drop_column(state, pos);
  auto layout = state.layout().without(pos);
  return StateAccess::make(std::move(layout), std::move(digits),
                           std::move(StateAccess::amps(state)));
}

void prune(std::vector<Digit>& digits, std::vector<Amplitude>& amps, std::size_t w) {
  std::size_t keep = 0;
  for (std::size_t t = 0; t < amps.size(); ++t) {
    if (std::abs(amps[t]) < kPruneThreshold) continue;
    if (keep != t) {
      std::copy_n(digits.begin() + static_cast<std::ptrdiff_t>(t * w), w,
                  digits.begin() + static_cast<std::ptrdiff_t>(keep * w));
      amps[keep] = amps[t];
    }
    ++keep;
  }
  amps.resize(keep);
  digits.resize(keep * w);
}

}  // namespace

SparseState new_zero_state(RegisterLayout layout) { return SparseState(std::move(layout)); }

SparseState add_registers(SparseState state, std::span<const Register> regs) {
  const std::size_t w = state.width();
  const std::size_t extra = regs.size();
  auto layout = state.layout().with_appended(regs);
  const auto in = state.raw_digits();
  std::vector<Digit> digits(state.size() * (w + extra), 0);
  for (std::size_t t = 0; t < state.size(); ++t) {
    std::copy_n(in.data() + t * w, w, digits.data() + t * (w + extra));
  }
  return StateAccess::make(std::move(layout), std::move(digits), std::move(StateAccess::amps(state)));
}

SparseState prepare(SparseState state, const RegisterId& reg, std::span<const Amplitude> amplitudes) {
  const std::uint64_t q = state.dimension();
  const std::size_t pos = state.layout().index_of(reg);
  if (amplitudes.empty() || amplitudes.size() > q) {
    throw DimensionMismatchError("amplitude vector must have between 1 and q entries");
  }
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw NotNormalizedError("private state has norm^2 " + std::to_string(norm));
  }
  if (!register_is_fresh(state, pos)) {
    throw NotFreshError("register '" + reg.name() + "' is not in a fresh |0>");
  }
  std::vector<std::pair<Digit, Amplitude>> support;
  for (std::size_t v = 0; v < amplitudes.size(); ++v) {
    if (std::abs(amplitudes[v]) >= kPruneThreshold) support.emplace_back(static_cast<Digit>(v), amplitudes[v]);
  }
  const std::size_t w = state.width();
  const std::size_t fan = support.size();
  const auto in = state.raw_digits();
  const auto in_amps = state.amplitudes();
  std::vector<Digit> digits(state.size() * fan * w);
  std::vector<Amplitude> amps(state.size() * fan);
  for (std::size_t t = 0; t < state.size(); ++t) {
    for (std::size_t f = 0; f < fan; ++f) {
      Digit* dst = digits.data() + (t * fan + f) * w;
      std::copy_n(in.data() + t * w, w, dst);
      dst[pos] = support[f].first;
      amps[t * fan + f] = in_amps[t] * support[f].second;
    }
  }
  prune(digits, amps, w);
  return StateAccess::make(state.layout(), std::move(digits), std::move(amps));
}

SparseState encode_isometry(SparseState state, const RegisterId& src,
                            std::span<const RegisterId> targets, std::size_t k,
                            const EvalPoints& points, RegisterRole target_role) {
  const std::uint64_t q = state.dimension();
  const std::size_t n = targets.size();
  if (k < 1 || k > n) {
    throw ParameterError("encoding needs 1 <= k <= n (k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + ")");
  }
  if (points.size() != n) throw DimensionMismatchError("need exactly one evaluation point per target");
  if (points.field().modulus() != q) throw ModulusMismatchError("evaluation points not in Z_q");
  require_distinct(targets, "encode_isometry targets");
  for (const auto& t : targets) {
    if (t == src) throw RegisterError("encode target equals its source register");
  }

  // Pre-existing targets must be fresh; they are re-created at the end.
  for (const auto& t : targets) {
    if (auto pos = state.layout().find(t)) {
      if (!register_is_fresh(state, *pos)) {
        throw NotFreshError("encode target '" + t.name() + "' is not in a fresh |0>");
      }
      state = remove_fresh_register(std::move(state), *pos);
    }
  }
  const std::size_t src_pos = state.layout().index_of(src);
  const std::size_t w_in = state.width();
  const std::size_t w_keep = w_in - 1;
  const std::size_t w_out = w_keep + n;

  // Free coefficients c_0..c_{k-2}: q^{k-1} combinations. contrib[f][j] is
  // sum_t c_t x_j^t for combination f; the secret adds s * x_j^{k-1}.
  std::size_t fan = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) fan *= q;
  std::vector<Digit> contrib(fan * n);
  std::vector<std::uint64_t> coeffs(k > 0 ? k - 1 : 0, 0);
  for (std::size_t f = 0; f < fan; ++f) {
    std::size_t rest = f;
    for (std::size_t i = k - 1; i-- > 0;) {
      coeffs[i] = rest % q;
      rest /= q;
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      std::uint64_t xp = 1;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        acc = mod_add(acc, mod_mul(coeffs[i], xp, q), q);
        xp = mod_mul(xp, points[j].value(), q);
      }
      contrib[f * n + j] = static_cast<Digit>(acc);
    }
  }
  // secret_part[s * n + j] = s * x_j^{k-1}
  std::vector<Digit> secret_part(q * n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t top = mod_pow(points[j].value(), k - 1, q);
    for (std::uint64_t s = 0; s < q; ++s) secret_part[s * n + j] = static_cast<Digit>(mod_mul(s, top, q));
  }

  const double scale = std::pow(static_cast<double>(q), -0.5 * static_cast<double>(k - 1));
  const auto in = state.raw_digits();
  const auto in_amps = state.amplitudes();
  const auto terms = static_cast<std::int64_t>(state.size());
  std::vector<Digit> digits(state.size() * fan * w_out);
  std::vector<Amplitude> amps(state.size() * fan);

#pragma omp parallel for schedule(static) num_threads(thread_count()) \
    if (state.size() * fan > kParallelThreshold)
  for (std::int64_t ti = 0; ti < terms; ++ti) {
    const auto t = static_cast<std::size_t>(ti);
    const Digit* row = in.data() + t * w_in;
    const Digit* lift = secret_part.data() + static_cast<std::size_t>(row[src_pos]) * n;
    for (std::size_t f = 0; f < fan; ++f) {
      Digit* dst = digits.data() + (t * fan + f) * w_out;
      std::copy_n(row, src_pos, dst);
      std::copy(row + src_pos + 1, row + w_in, dst + src_pos);
      for (std::size_t j = 0; j < n; ++j) {
        dst[w_keep + j] = static_cast<Digit>(mod_add(contrib[f * n + j], lift[j], q));
      }
      amps[t * fan + f] = in_amps[t] * scale;
    }
  }

  std::vector<Register> added;
  added.reserve(n);
  for (const auto& t : targets) added.push_back({t, target_role});
  auto layout = state.layout().without(src_pos).with_appended(added);
  return StateAccess::make(std::move(layout), std::move(digits), std::move(amps));
}

SparseState controlled_add(SparseState state, const RegisterId& src, const RegisterId& dst) {
  const PrimeField field(state.dimension());
  return controlled_add(std::move(state), src, dst, field.one());
}

SparseState controlled_add(SparseState state, const RegisterId& src, const RegisterId& dst,
                           const FieldElement& scalar) {
  const std::uint64_t q = state.dimension();
  if (scalar.modulus() != q) throw ModulusMismatchError("controlled_add scalar not in Z_q");
  if (src == dst) throw RegisterError("controlled_add needs distinct source and destination");
  const std::size_t sp = state.layout().index_of(src);
  const std::size_t dp = state.layout().index_of(dst);
  std::vector<Digit> table(q);
  for (std::uint64_t a = 0; a < q; ++a) table[a] = static_cast<Digit>(mod_mul(a, scalar.value(), q));
  for_each_term(state, [&](Digit* row) {
    row[dp] = static_cast<Digit>(mod_add(row[dp], table[row[sp]], q));
  });
  return state;
}

SparseState apply_matrix(SparseState state, std::span<const RegisterId> regs, const MatrixFq& m) {
  const std::uint64_t q = state.dimension();
  if (m.field().modulus() != q) throw ModulusMismatchError("matrix not over Z_q");
  if (!m.square() || m.rows() != regs.size()) {
    throw DimensionMismatchError("matrix is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + " but " + std::to_string(regs.size()) +
                                 " registers were given");
  }
  require_distinct(regs, "apply_matrix");
  if (regs.size() > 256) throw DimensionMismatchError("apply_matrix supports at most 256 registers");
  (void)invert(m);  // throws SingularMatrixError
  const auto pos = state.layout().indices_of(regs);
  const std::size_t l = regs.size();
  std::vector<std::uint64_t> mat(l * l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) mat[i * l + j] = m.raw(i, j);
  }
  for_each_term(state, [&](Digit* row) {
    // l is at most the share count, which is bounded by q <= 256.
    std::uint64_t y[256];
    for (std::size_t i = 0; i < l; ++i) y[i] = row[pos[i]];
    for (std::size_t j = 0; j < l; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < l; ++i) acc += y[i] * mat[i * l + j];
      row[pos[j]] = static_cast<Digit>(acc % q);
    }
  });
  return state;
}

SparseState shift_right(SparseState state, std::span<const RegisterId> regs) {
  require_distinct(regs, "shift_right");
  if (regs.empty()) throw RegisterError("shift_right needs at least one register");
  const auto pos = state.layout().indices_of(regs);
  const std::size_t l = regs.size();
  std::vector<Register> next = state.layout().registers();
  for (std::size_t j = 0; j < l; ++j) next[pos[j]] = state.layout()[pos[(j + 1) % l]];
  StateAccess::layout(state) = state.layout().relabeled(std::move(next));
  return state;
}

SparseState move_to_front(SparseState state, std::span<const RegisterId> regs) {
  require_distinct(regs, "move_to_front");
  const auto front = state.layout().indices_of(regs);
  std::vector<std::size_t> order(front.begin(), front.end());
  for (std::size_t p = 0; p < state.width(); ++p) {
    if (std::find(front.begin(), front.end(), p) == front.end()) order.push_back(p);
  }
  const std::size_t w = state.width();
  for_each_term(state, [&](Digit* row) {
    Digit tmp[256 * 4];
    std::vector<Digit> heap;
    Digit* buf = tmp;
    if (w > sizeof(tmp)) {
      heap.resize(w);
      buf = heap.data();
    }
    for (std::size_t i = 0; i < w; ++i) buf[i] = row[order[i]];
    std::copy_n(buf, w, row);
  });
  StateAccess::layout(state) = state.layout().permuted(order);
  return state;
}

std::vector<std::pair<std::vector<Digit>, double>> outcome_distribution(
    const SparseState& state, std::span<const RegisterId> regs) {
  require_distinct(regs, "measure");
  const auto pos = state.layout().indices_of(regs);
  std::map<std::vector<Digit>, double> probs;
  std::vector<Digit> key(pos.size());
  for (std::size_t t = 0; t < state.size(); ++t) {
    const auto row = state.digits(t);
    for (std::size_t i = 0; i < pos.size(); ++i) key[i] = row[pos[i]];
    probs[key] += std::norm(state.amplitude(t));
  }
  return {probs.begin(), probs.end()};
}

Measurement measure(SparseState state, std::span<const RegisterId> regs, RandomSource& rng) {
  const auto dist = outcome_distribution(state, regs);
  double total = 0.0;
  for (const auto& [_, p] : dist) total += p;
  const double u = rng.uniform() * total;
  std::size_t pick = dist.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i].second;
    if (u < acc) {
      pick = i;
      break;
    }
  }
  const auto& outcome = dist[pick].first;
  const double p = dist[pick].second;

  const auto pos = state.layout().indices_of(regs);
  const std::size_t w = state.width();
  const double renorm = 1.0 / std::sqrt(p);
  std::vector<Digit> digits;
  std::vector<Amplitude> amps;
  for (std::size_t t = 0; t < state.size(); ++t) {
    const auto row = state.digits(t);
    bool match = true;
    for (std::size_t i = 0; i < pos.size() && match; ++i) match = row[pos[i]] == outcome[i];
    if (!match) continue;
    digits.insert(digits.end(), row.begin(), row.end());
    amps.push_back(state.amplitude(t) * renorm);
  }
  prune(digits, amps, w);

  const PrimeField field(state.dimension());
  std::vector<FieldElement> outcomes;
  outcomes.reserve(outcome.size());
  for (auto d : outcome) outcomes.push_back(field.element(d));
  return {std::move(outcomes), p / total,
          StateAccess::make(state.layout(), std::move(digits), std::move(amps))};
}

DensityMatrix reduced_density(const SparseState& state, std::span<const RegisterId> regs) {
  require_distinct(regs, "reduced_density");
  const auto pos = state.layout().indices_of(regs);
  const std::uint64_t q = state.dimension();
  std::size_t dim = 1;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    dim *= q;
    if (dim > kMaxSubsystemDim) {
      throw SubsystemTooLargeError("reduced subsystem dimension exceeds " +
                                   std::to_string(kMaxSubsystemDim));
    }
  }
  std::vector<bool> in_subsystem(state.width(), false);
  for (auto p : pos) in_subsystem[p] = true;

  // Group terms by the digits of the traced-out registers.
  struct Entry {
    std::size_t index;
    Amplitude amp;
  };
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::vector<Entry>> groups;
  std::string rest;
  for (std::size_t t = 0; t < state.size(); ++t) {
    const auto row = state.digits(t);
    std::size_t a = 0;
    for (auto p : pos) a = a * q + row[p];
    rest.clear();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!in_subsystem[c]) rest.push_back(static_cast<char>(row[c]));
    }
    auto [it, inserted] = group_of.try_emplace(rest, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back({a, state.amplitude(t)});
  }

  // Each row is owned by one thread and accumulated in group order, so the
  // result does not depend on the thread count.
  std::vector<std::vector<std::pair<std::size_t, Amplitude>>> occurrences(dim);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& e : groups[g]) occurrences[e.index].emplace_back(g, e.amp);
  }
  std::vector<Amplitude> rho(dim * dim, Amplitude(0.0, 0.0));
  const auto rows = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count()) \
    if (state.size() > kParallelThreshold)
  for (std::int64_t ai = 0; ai < rows; ++ai) {
    const auto a = static_cast<std::size_t>(ai);
    for (const auto& [g, amp_a] : occurrences[a]) {
      for (const auto& e : groups[g]) rho[a * dim + e.index] += amp_a * std::conj(e.amp);
    }
  }
  return DensityMatrix(dim, std::move(rho));
}

double phase_aligned_distance(const SparseState& a, const SparseState& b) {
  if (!a.layout().same_registers(b.layout())) {
    throw LayoutMismatchError("states are defined over different registers");
  }
  const std::size_t w = a.width();
  // Column c of a corresponds to column perm[c] of b.
  std::vector<std::size_t> perm(w);
  for (std::size_t c = 0; c < w; ++c) perm[c] = b.layout().index_of(a.layout()[c].id);
  std::vector<Digit> b_digits(b.size() * w);
  for (std::size_t t = 0; t < b.size(); ++t) {
    const auto row = b.digits(t);
    for (std::size_t c = 0; c < w; ++c) b_digits[t * w + c] = row[perm[c]];
  }
  const SparseState b_aligned =
      StateAccess::make(a.layout(), std::move(b_digits),
                        std::vector<Amplitude>(b.amplitudes().begin(), b.amplitudes().end()));

  const auto oa = a.canonical_order();
  const auto ob = b_aligned.canonical_order();
  if (oa.empty() || ob.empty()) return oa.size() == ob.size() ? 0.0 : 1.0;

  std::size_t lead = oa.front();
  for (auto t : oa) {
    if (std::abs(a.amplitude(t)) > std::abs(a.amplitude(lead)) + 1e-15) lead = t;
  }
  const Amplitude b_lead = b_aligned.amplitude_of(a.digits(lead));
  Amplitude phase(1.0, 0.0);
  if (std::abs(b_lead) > kPruneThreshold) {
    phase = a.amplitude(lead) / b_lead;
    phase /= std::abs(phase);
  }

  double worst = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < oa.size() || j < ob.size()) {
    if (j == ob.size() || (i < oa.size() && lex_less(a.digits(oa[i]), b_aligned.digits(ob[j])))) {
      worst = std::max(worst, std::abs(a.amplitude(oa[i++])));
    } else if (i == oa.size() || lex_less(b_aligned.digits(ob[j]), a.digits(oa[i]))) {
      worst = std::max(worst, std::abs(b_aligned.amplitude(ob[j++])));
    } else {
      worst = std::max(worst, std::abs(a.amplitude(oa[i++]) - phase * b_aligned.amplitude(ob[j++])));
    }
  }
  return worst;
}

bool states_equal(const SparseState& a, const SparseState& b, double tol) {
  return phase_aligned_distance(a, b) < tol;
}

SparseState discard_register(SparseState state, const RegisterId& reg) {
  const std::size_t pos = state.layout().index_of(reg);
  const RegisterId ids[] = {reg};
  const auto rho = reduced_density(state, ids);
  if (rho.purity() < 1.0 - kNormTolerance) {
    throw EntangledDiscardError("register '" + reg.name() + "' is entangled (purity " +
                                std::to_string(rho.purity()) + ")");
  }
  // For a product state, the rest is proportional to the slice at any digit
  // with nonzero weight; use the most likely one.
  std::size_t best = 0;
  for (std::size_t d = 1; d < rho.dim(); ++d) {
    if (rho(d, d).real() > rho(best, best).real()) best = d;
  }
  const double renorm = 1.0 / std::sqrt(rho(best, best).real());
  const std::size_t w = state.width();
  std::vector<Digit> digits;
  std::vector<Amplitude> amps;
  for (std::size_t t = 0; t < state.size(); ++t) {
    const auto row = state.digits(t);
    if (row[pos] != best) continue;
    digits.insert(digits.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(pos));
    digits.insert(digits.end(), row.begin() + static_cast<std::ptrdiff_t>(pos) + 1, row.end());
    amps.push_back(state.amplitude(t) * renorm);
  }
  prune(digits, amps, w - 1);
  return StateAccess::make(state.layout().without(pos), std::move(digits), std::move(amps));
}

namespace {

void append_fixed(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  if (std::string_view(buf) == "-0.000000000000") {
    out += "0.000000000000";
  } else {
    out += buf;
  }
}

}  // namespace

std::string dump(const SparseState& state) {
  std::string out;
  for (auto t : state.canonical_order()) {
    const auto row = state.digits(t);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      out += std::to_string(row[c]);
    }
    out.push_back(' ');
    append_fixed(out, state.amplitude(t).real());
    out.push_back(',');
    append_fixed(out, state.amplitude(t).imag());
    out.push_back('\n');
  }
  return out;
}

std::uint64_t checksum(const SparseState& state) {
  std::uint64_t layout_hash = fnv1a(std::to_string(state.dimension()));
  for (const auto& r : state.layout().registers()) layout_hash = fnv1a(r.id.name() + ";", layout_hash);

  const std::size_t w = state.width();
  const auto digits = state.raw_digits();
  const auto amps = state.amplitudes();
  const auto count = static_cast<std::int64_t>(state.size());
  std::uint64_t sum = 0;
#pragma omp parallel for reduction(+ : sum) schedule(static) num_threads(thread_count()) \
    if (state.size() > kParallelThreshold)
  for (std::int64_t ti = 0; ti < count; ++ti) {
    const auto t = static_cast<std::size_t>(ti);
    const std::string_view row(reinterpret_cast<const char*>(digits.data() + t * w), w);
    std::uint64_t h = fnv1a(row);
    h = splitmix64(h ^ static_cast<std::uint64_t>(std::llround(amps[t].real() * 1e10)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(std::llround(amps[t].imag() * 1e10)));
    sum += h;
  }
  return splitmix64(layout_hash ^ sum);
}

}  // namespace qss
