/*
 * Copyright 2026 The SIAN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SIAN_TENSOR_H_
#define SIAN_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sian {

class Rng;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols);
  Matrix(size_t rows, size_t cols, std::vector<double> data);

  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix Identity(size_t n);
  // Entries drawn uniformly from [lo, hi).
  static Matrix Random(size_t rows, size_t cols, Rng& rng, double lo = -1.0,
                       double hi = 1.0);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool AllFinite() const;

  bool operator==(const Matrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b. Each output entry accumulates its products in ascending inner index,
// starting from +0.0; every dense and sparse product in the library follows
// the same order so different layouts produce bit-identical results.
// Throws ShapeError on a.cols != b.rows and NumericError on non-finite output.
Matrix MatMul(const Matrix& a, const Matrix& b);

// Block-diagonal matrix held as its diagonal blocks. Block i occupies rows
// [row_offsets[i], row_offsets[i+1]) and columns [col_offsets[i],
// col_offsets[i+1]) of the equivalent dense matrix.
class BlockDiagMatrix {
 public:
  BlockDiagMatrix();
  explicit BlockDiagMatrix(std::vector<Matrix> blocks);

  size_t num_blocks() const { return blocks_.size(); }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(size_t i) const { return blocks_[i]; }
  // Writable view of one block's entries; the block shape is fixed.
  std::span<double> mutable_block_data(size_t i) { return blocks_[i].data(); }

  const std::vector<size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<size_t>& col_offsets() const { return col_offsets_; }
  size_t rows() const { return row_offsets_.back(); }
  size_t cols() const { return col_offsets_.back(); }

  // Number of stored entries, i.e. the sum of block areas.
  size_t stored_count() const;

  Matrix ToDense() const;

  bool operator==(const BlockDiagMatrix&) const = default;

 private:
  std::vector<Matrix> blocks_;
  std::vector<size_t> row_offsets_;
  std::vector<size_t> col_offsets_;
};

// x * dense(w), computed block by block. x holds a batch of inputs laid out
// contiguously per block (x.cols == w.rows()).
Matrix BlockForward(const BlockDiagMatrix& w, const Matrix& x);

// Compressed sparse row matrix. Column indices are strictly increasing within
// each row.
class CsrMatrix {
 public:
  CsrMatrix();
  CsrMatrix(size_t rows, size_t cols, std::vector<double> values,
            std::vector<size_t> col_indices, std::vector<size_t> row_starts);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t nonzeros() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<size_t>& col_indices() const { return col_indices_; }
  const std::vector<size_t>& row_starts() const { return row_starts_; }

  bool operator==(const CsrMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<size_t> col_indices_;
  std::vector<size_t> row_starts_;
};

// Stores every block entry, explicit zeros included, so the block pattern can
// be recovered from the index arrays alone.
CsrMatrix ToCsr(const BlockDiagMatrix& w);

// Inverse of ToCsr. Throws FormatError unless the stored pattern is exactly
// the full block-diagonal pattern described by the offsets.
BlockDiagMatrix FromCsr(const CsrMatrix& c, std::span<const size_t> row_offsets,
                        std::span<const size_t> col_offsets);

// x * w for a CSR matrix w (x.cols == w.rows()). Same accumulation order as
// MatMul and BlockForward.
Matrix CsrForward(const CsrMatrix& w, const Matrix& x);

}  // namespace sian

#endif  // SIAN_TENSOR_H_
