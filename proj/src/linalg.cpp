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

#include "qss/linalg.hpp"

#include <algorithm>
#include <string>

#include "qss/errors.hpp"

namespace qss {

namespace {

std::vector<FieldElement> to_elements(const PrimeField& field,
                                      std::initializer_list<std::uint64_t> values) {
  std::vector<FieldElement> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(field.element(v));
  return out;
}

void require_common_modulus(std::span<const FieldElement> xs) {
  for (const auto& x : xs) {
    if (x.modulus() != xs.front().modulus()) {
      throw ModulusMismatchError("vector mixes moduli " + std::to_string(xs.front().modulus()) +
                                 " and " + std::to_string(x.modulus()));
    }
  }
}

}  // namespace

CoeffVector::CoeffVector(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DimensionMismatchError("coefficient vector must be non-empty");
  require_common_modulus(coeffs_);
}

CoeffVector::CoeffVector(const PrimeField& field, std::initializer_list<std::uint64_t> values)
    : CoeffVector(to_elements(field, values)) {}

std::vector<std::uint64_t> CoeffVector::values() const {
  std::vector<std::uint64_t> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.value());
  return out;
}

EvalPoints::EvalPoints(std::vector<FieldElement> points) : points_(std::move(points)), modulus_(0) {
  if (points_.empty()) return;
  require_common_modulus(points_);
  modulus_ = points_.front().modulus();
  if (points_.size() > modulus_) {
    throw DuplicatePointError("cannot pick " + std::to_string(points_.size()) +
                              " distinct points in Z_" + std::to_string(modulus_));
  }
  std::vector<std::uint64_t> seen;
  for (const auto& p : points_) seen.push_back(p.value());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw DuplicatePointError("evaluation points must be pairwise distinct");
  }
}

EvalPoints::EvalPoints(const PrimeField& field, std::initializer_list<std::uint64_t> values)
    : EvalPoints(to_elements(field, values)) {
  modulus_ = field.modulus();
}

EvalPoints EvalPoints::canonical(const PrimeField& field, std::size_t count) {
  if (count > field.modulus()) {
    throw DuplicatePointError("Z_" + std::to_string(field.modulus()) + " has fewer than " +
                              std::to_string(count) + " elements");
  }
  std::vector<FieldElement> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(field.element(i));
  EvalPoints out(std::move(pts));
  out.modulus_ = field.modulus();
  return out;
}

bool EvalPoints::contains(const FieldElement& x) const {
  return std::find(points_.begin(), points_.end(), x) != points_.end();
}

EvalPoints EvalPoints::select(std::span<const std::size_t> positions) const {
  std::vector<FieldElement> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(points_.at(p));
  EvalPoints sel(std::move(out));
  sel.modulus_ = modulus_;
  return sel;
}

MatrixFq::MatrixFq(const PrimeField& field, std::size_t rows, std::size_t cols)
    : q_(field.modulus()), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

MatrixFq::MatrixFq(const PrimeField& field,
                   std::initializer_list<std::initializer_list<std::uint64_t>> rows)
    : q_(field.modulus()), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatchError("ragged matrix literal");
    for (auto v : row) entries_.push_back(v % q_);
  }
}

MatrixFq MatrixFq::identity(const PrimeField& field, std::size_t n) {
  MatrixFq m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1 % field.modulus();
  return m;
}

FieldElement MatrixFq::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionMismatchError("matrix index out of range");
  return field().element(entries_[r * cols_ + c]);
}

void MatrixFq::set(std::size_t r, std::size_t c, const FieldElement& v) {
  if (r >= rows_ || c >= cols_) throw DimensionMismatchError("matrix index out of range");
  if (v.modulus() != q_) throw ModulusMismatchError("matrix entry from a different field");
  entries_[r * cols_ + c] = v.value();
}

MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) {
  if (a.field() != b.field()) throw ModulusMismatchError("matrix product across fields");
  if (a.cols() != b.rows()) throw DimensionMismatchError("matrix product dimension mismatch");
  const auto q = a.field().modulus();
  MatrixFq out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) acc = mod_add(acc, mod_mul(a.raw(i, t), b.raw(t, j), q), q);
      out.set(i, j, a.field().element(acc));
    }
  }
  return out;
}

FieldElement poly_eval(const CoeffVector& c, const FieldElement& t) {
  if (c.field() != t.field()) throw ModulusMismatchError("polynomial and point in different fields");
  FieldElement acc = c[c.size() - 1];
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * t + c[i];
  return acc;
}

MatrixFq vandermonde(const EvalPoints& points) {
  if (points.empty()) throw DimensionMismatchError("Vandermonde matrix needs at least one point");
  const auto field = points.field();
  const std::size_t l = points.size();
  MatrixFq v(field, l, l);
  for (std::size_t j = 0; j < l; ++j) {
    for (std::size_t i = 0; i < l; ++i) v.set(i, j, pow(points[j], i));
  }
  return v;
}

MatrixFq invert(const MatrixFq& m) {
  if (!m.square()) throw DimensionMismatchError("only square matrices can be inverted");
  const auto field = m.field();
  const std::uint64_t q = field.modulus();
  const std::size_t n = m.rows();

  // Augmented [A | I] as raw residues.
  std::vector<std::vector<std::uint64_t>> aug(n, std::vector<std::uint64_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m.raw(i, j);
    aug[i][n + i] = 1 % q;
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("matrix is singular over Z_" + std::to_string(q));
    std::swap(aug[pivot], aug[col]);

    const std::uint64_t scale = mod_pow(aug[col][col], q - 2, q);
    for (auto& v : aug[col]) v = mod_mul(v, scale, q);

    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const std::uint64_t factor = aug[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) {
        const std::uint64_t sub = mod_mul(factor, aug[col][c], q);
        aug[r][c] = mod_add(aug[r][c], sub == 0 ? 0 : q - sub, q);
      }
    }
  }

  MatrixFq out(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, field.element(aug[i][n + j]));
  }
  return out;
}

CoeffVector row_vec_mul(const CoeffVector& y, const MatrixFq& m) {
  if (y.field() != m.field()) throw ModulusMismatchError("vector and matrix in different fields");
  if (y.size() != m.rows()) {
    throw DimensionMismatchError("row vector of length " + std::to_string(y.size()) +
                                 " times matrix with " + std::to_string(m.rows()) + " rows");
  }
  const auto field = m.field();
  const std::uint64_t q = field.modulus();
  std::vector<FieldElement> out;
  out.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) acc = mod_add(acc, mod_mul(y[i].value(), m.raw(i, j), q), q);
    out.push_back(field.element(acc));
  }
  return CoeffVector(std::move(out));
}

}  // namespace qss
