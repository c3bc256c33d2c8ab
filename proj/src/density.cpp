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

#include "qss/density.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qss/errors.hpp"

namespace qss {

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) throw DimensionMismatchError("density matrix is not d x d");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  std::vector<Amplitude> e(dim * dim, Amplitude(0.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0 / static_cast<double>(dim);
  return DensityMatrix(dim, std::move(e));
}

Amplitude DensityMatrix::trace() const {
  Amplitude t(0.0, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ab rho_ab rho_ba = sum_ab |rho_ab|^2 for Hermitian rho.
  double acc = 0.0;
  for (const auto& e : entries_) acc += std::norm(e);
  return acc;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = a; b < dim_; ++b) {
      worst = std::max(worst, std::abs((*this)(a, b) - std::conj((*this)(b, a))));
    }
  }
  return worst;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = 0; b < dim_; ++b) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          0.5 * ((*this)(a, b) + std::conj((*this)(b, a)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
  if (dim_ != other.dim_) throw DimensionMismatchError("density matrices of different dimension");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

}  // namespace qss
