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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qss/gfq.hpp"

namespace qss {

/// Ordered list of field elements sharing one modulus. Used both as the
/// polynomial coefficient vector (c_0 ... c_{l-1}) and as a generic row vector.
class CoeffVector {
 public:
  explicit CoeffVector(std::vector<FieldElement> coeffs);
  CoeffVector(const PrimeField& field, std::initializer_list<std::uint64_t> values);

  std::size_t size() const noexcept { return coeffs_.size(); }
  const FieldElement& operator[](std::size_t i) const { return coeffs_[i]; }
  PrimeField field() const { return coeffs_.front().field(); }
  std::span<const FieldElement> elements() const noexcept { return coeffs_; }
  std::vector<std::uint64_t> values() const;

  auto begin() const noexcept { return coeffs_.begin(); }
  auto end() const noexcept { return coeffs_.end(); }

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

 private:
  std::vector<FieldElement> coeffs_;
};

/// Pairwise-distinct evaluation points x_0 ... x_{n-1}.
class EvalPoints {
 public:
  explicit EvalPoints(std::vector<FieldElement> points);
  EvalPoints(const PrimeField& field, std::initializer_list<std::uint64_t> values);

  /// The canonical points 0, 1, ..., count-1.
  static EvalPoints canonical(const PrimeField& field, std::size_t count);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const FieldElement& operator[](std::size_t i) const { return points_[i]; }
  PrimeField field() const { return PrimeField(modulus_); }
  std::span<const FieldElement> elements() const noexcept { return points_; }
  bool contains(const FieldElement& x) const;

  /// Points at the given positions, in the given order.
  EvalPoints select(std::span<const std::size_t> positions) const;

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const EvalPoints&, const EvalPoints&) = default;

 private:
  std::vector<FieldElement> points_;
  std::uint64_t modulus_;
};

/// Dense row-major matrix over Z_q.
class MatrixFq {
 public:
  MatrixFq(const PrimeField& field, std::size_t rows, std::size_t cols);
  MatrixFq(const PrimeField& field, std::initializer_list<std::initializer_list<std::uint64_t>> rows);

  static MatrixFq identity(const PrimeField& field, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  PrimeField field() const { return PrimeField(q_); }

  FieldElement at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const FieldElement& v);
  /// Raw residue at (r, c); used by the state kernels.
  std::uint64_t raw(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }

  friend bool operator==(const MatrixFq&, const MatrixFq&) = default;

 private:
  std::uint64_t q_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> entries_;
};

MatrixFq operator*(const MatrixFq& a, const MatrixFq& b);

/// Horner evaluation of c_0 + c_1 t + ... + c_{l-1} t^{l-1}.
FieldElement poly_eval(const CoeffVector& c, const FieldElement& t);

/// l x l Vandermonde matrix with entry (i, j) = z_j^i, so that
/// (c_0 .. c_{l-1}) V = (p_c(z_0) .. p_c(z_{l-1})).
MatrixFq vandermonde(const EvalPoints& points);

/// Gauss-Jordan inverse over Z_q. Pivot is the first nonzero entry at or below
/// the diagonal. Throws SingularMatrixError.
MatrixFq invert(const MatrixFq& m);

/// Row vector times matrix, yM.
CoeffVector row_vec_mul(const CoeffVector& y, const MatrixFq& m);

}  // namespace qss
