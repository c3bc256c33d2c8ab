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

#include <complex>
#include <cstddef>
#include <vector>

namespace qss {

using Amplitude = std::complex<double>;

/// d x d complex matrix produced by a partial trace. Basis index of a tuple of
/// register digits is mixed-radix with the first register most significant.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t dim, std::vector<Amplitude> entries);

  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<Amplitude>& entries() const noexcept { return entries_; }

  Amplitude trace() const;
  /// Tr(rho^2).
  double purity() const;
  /// max |rho_ab - conj(rho_ba)|.
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  /// max |rho_ab - sigma_ab|; throws DimensionMismatchError.
  double max_abs_diff(const DensityMatrix& other) const;

 private:
  std::size_t dim_;
  std::vector<Amplitude> entries_;
};

}  // namespace qss
