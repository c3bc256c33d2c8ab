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

#include "qss/reference_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qss::reference {

MapState::MapState(std::uint64_t q, std::vector<std::string> names) : q_(q), names_(std::move(names)) {
  terms_[Tuple(names_.size(), 0)] = {1.0, 0.0};
}

MapState MapState::from(const SparseState& state) {
  std::vector<std::string> names;
  for (const auto& r : state.layout().registers()) names.push_back(r.id.name());
  MapState out(state.dimension(), names);
  out.terms_.clear();
  for (std::size_t t = 0; t < state.size(); ++t) {
    auto d = state.digits(t);
    out.terms_[Tuple(d.begin(), d.end())] = state.amplitude(t);
  }
  return out;
}

SparseState MapState::to_sparse() const {
  std::vector<Register> regs;
  for (const auto& n : names_) regs.push_back({RegisterId(n), RegisterRole::ancilla});
  std::vector<Digit> digits;
  std::vector<Amplitude> amps;
  for (const auto& [tuple, amp] : terms_) {
    if (std::abs(amp) < kPruneThreshold) continue;
    digits.insert(digits.end(), tuple.begin(), tuple.end());
    amps.push_back(amp);
  }
  return SparseState(RegisterLayout(q_, std::move(regs)), std::move(digits), std::move(amps));
}

std::size_t MapState::pos(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("no register " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

void MapState::add_register(const std::string& name) {
  names_.push_back(name);
  std::map<Tuple, Amplitude> next;
  for (const auto& [key, amp] : terms_) {
    Tuple tuple = key;
    tuple.push_back(0);
    next[tuple] = amp;
  }
  terms_ = std::move(next);
}

void MapState::prepare(const std::string& reg, std::span<const Amplitude> amplitudes) {
  const std::size_t p = pos(reg);
  std::map<Tuple, Amplitude> next;
  for (const auto& [tuple, amp] : terms_) {
    for (std::size_t v = 0; v < amplitudes.size(); ++v) {
      if (amplitudes[v] == Amplitude(0.0, 0.0)) continue;
      Tuple t = tuple;
      t[p] = static_cast<Digit>(v);
      next[t] += amp * amplitudes[v];
    }
  }
  terms_ = std::move(next);
}

void MapState::encode(const std::string& src, const std::vector<std::string>& targets, std::size_t k,
                      const std::vector<std::uint64_t>& points) {
  const std::size_t p = pos(src);
  std::size_t combos = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) combos *= q_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(combos));

  std::map<Tuple, Amplitude> next;
  for (const auto& [tuple, amp] : terms_) {
    const std::uint64_t s = tuple[p];
    for (std::size_t f = 0; f < combos; ++f) {
      // Full coefficient vector c with c_{k-1} = s.
      std::vector<std::uint64_t> c(k, 0);
      std::size_t rest = f;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        c[i] = rest % q_;
        rest /= q_;
      }
      c[k - 1] = s;
      Tuple out;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i != p) out.push_back(tuple[i]);
      }
      for (auto x : points) {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < k; ++i) {
          std::uint64_t term = c[i];
          for (std::size_t e = 0; e < i; ++e) term = term * x % q_;
          value = (value + term) % q_;
        }
        out.push_back(static_cast<Digit>(value));
      }
      next[out] += amp * scale;
    }
  }
  names_.erase(names_.begin() + static_cast<std::ptrdiff_t>(p));
  names_.insert(names_.end(), targets.begin(), targets.end());
  terms_ = std::move(next);
}

void MapState::controlled_add(const std::string& src, const std::string& dst, std::uint64_t scalar) {
  const std::size_t a = pos(src);
  const std::size_t b = pos(dst);
  std::map<Tuple, Amplitude> next;
  for (const auto& [key, amp] : terms_) {
    Tuple tuple = key;
    tuple[b] = static_cast<Digit>((tuple[b] + scalar * tuple[a]) % q_);
    next[tuple] += amp;
  }
  terms_ = std::move(next);
}

void MapState::apply_matrix(const std::vector<std::string>& regs,
                            const std::vector<std::vector<std::uint64_t>>& m) {
  std::vector<std::size_t> ps;
  for (const auto& r : regs) ps.push_back(pos(r));
  std::map<Tuple, Amplitude> next;
  for (const auto& [key, amp] : terms_) {
    Tuple tuple = key;
    Tuple y;
    for (auto p : ps) y.push_back(tuple[p]);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < ps.size(); ++i) acc = (acc + y[i] * m[i][j]) % q_;
      tuple[ps[j]] = static_cast<Digit>(acc);
    }
    next[tuple] += amp;
  }
  terms_ = std::move(next);
}

void MapState::shift_right(const std::vector<std::string>& regs) {
  std::vector<std::size_t> ps;
  for (const auto& r : regs) ps.push_back(pos(r));
  const std::size_t l = ps.size();
  std::map<Tuple, Amplitude> next;
  for (const auto& [key, amp] : terms_) {
    Tuple tuple = key;
    Tuple old = tuple;
    for (std::size_t j = 0; j < l; ++j) tuple[ps[j]] = old[ps[(j + l - 1) % l]];
    next[tuple] += amp;
  }
  terms_ = std::move(next);
}

std::vector<std::vector<Amplitude>> MapState::reduced_density(const std::vector<std::string>& regs) const {
  std::vector<std::size_t> ps;
  for (const auto& r : regs) ps.push_back(pos(r));
  std::size_t dim = 1;
  for (std::size_t i = 0; i < ps.size(); ++i) dim *= q_;
  std::vector<std::vector<Amplitude>> rho(dim, std::vector<Amplitude>(dim, {0.0, 0.0}));

  auto index = [&](const Tuple& t) {
    std::size_t a = 0;
    for (auto p : ps) a = a * q_ + t[p];
    return a;
  };
  auto same_rest = [&](const Tuple& x, const Tuple& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::find(ps.begin(), ps.end(), i) != ps.end()) continue;
      if (x[i] != y[i]) return false;
    }
    return true;
  };
  for (const auto& [tx, ax] : terms_) {
    for (const auto& [ty, ay] : terms_) {
      if (same_rest(tx, ty)) rho[index(tx)][index(ty)] += ax * std::conj(ay);
    }
  }
  return rho;
}

std::map<MapState::Tuple, double> MapState::distribution(const std::vector<std::string>& regs) const {
  std::vector<std::size_t> ps;
  for (const auto& r : regs) ps.push_back(pos(r));
  std::map<Tuple, double> out;
  for (const auto& [tuple, amp] : terms_) {
    Tuple key;
    for (auto p : ps) key.push_back(tuple[p]);
    out[key] += std::norm(amp);
  }
  return out;
}

}  // namespace qss::reference
