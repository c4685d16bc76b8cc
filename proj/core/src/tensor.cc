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

#include "sian/tensor.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

std::string Dims(size_t r, size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void RequireFinite(const Matrix& m, const char* op) {
  if (!m.AllFinite()) {
    throw NumericError(std::string(op) + " produced a non-finite value");
  }
}

}  // namespace

Matrix::Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("matrix " + Dims(rows, cols) + " given " +
                     std::to_string(data_.size()) + " values");
  }
}

Matrix Matrix::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const size_t r = rows.size();
  const size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged matrix literal");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::Identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Random(size_t rows, size_t cols, Rng& rng, double lo,
                      double hi) {
  Matrix m(rows, cols);
  for (double& v : m.data_) v = rng.Uniform(lo, hi);
  return m;
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul " + Dims(a.rows(), a.cols()) + " * " +
                     Dims(b.rows(), b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  const size_t n = b.cols();
  for (size_t i = 0; i < a.rows(); ++i) {
    double* o = out.row(i).data();
    const double* ar = a.row(i).data();
    for (size_t k = 0; k < a.cols(); ++k) {
      const double aik = ar[k];
      const double* br = b.row(k).data();
      for (size_t j = 0; j < n; ++j) o[j] += aik * br[j];
    }
  }
  RequireFinite(out, "matmul");
  return out;
}

BlockDiagMatrix::BlockDiagMatrix() : row_offsets_{0}, col_offsets_{0} {}

BlockDiagMatrix::BlockDiagMatrix(std::vector<Matrix> blocks)
    : blocks_(std::move(blocks)), row_offsets_{0}, col_offsets_{0} {
  row_offsets_.reserve(blocks_.size() + 1);
  col_offsets_.reserve(blocks_.size() + 1);
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const Matrix& b = blocks_[i];
    if (b.rows() == 0 || b.cols() == 0) {
      throw ShapeError("block " + std::to_string(i) + " is empty");
    }
    row_offsets_.push_back(row_offsets_.back() + b.rows());
    col_offsets_.push_back(col_offsets_.back() + b.cols());
  }
}

size_t BlockDiagMatrix::stored_count() const {
  size_t n = 0;
  for (const Matrix& b : blocks_) n += b.size();
  return n;
}

Matrix BlockDiagMatrix::ToDense() const {
  Matrix dense(rows(), cols());
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    const Matrix& b = blocks_[bi];
    for (size_t r = 0; r < b.rows(); ++r) {
      for (size_t c = 0; c < b.cols(); ++c) {
        dense(row_offsets_[bi] + r, col_offsets_[bi] + c) = b(r, c);
      }
    }
  }
  return dense;
}

Matrix BlockForward(const BlockDiagMatrix& w, const Matrix& x) {
  if (x.cols() != w.rows()) {
    throw ShapeError("block_forward input has " + std::to_string(x.cols()) +
                     " columns, blocks expect " + std::to_string(w.rows()));
  }
  Matrix out(x.rows(), w.cols());
  const auto& row_off = w.row_offsets();
  const auto& col_off = w.col_offsets();
  for (size_t r = 0; r < x.rows(); ++r) {
    const double* xr = x.row(r).data();
    double* orow = out.row(r).data();
    for (size_t bi = 0; bi < w.num_blocks(); ++bi) {
      const Matrix& b = w.block(bi);
      const double* xin = xr + row_off[bi];
      double* o = orow + col_off[bi];
      const size_t n = b.cols();
      for (size_t k = 0; k < b.rows(); ++k) {
        const double xk = xin[k];
        const double* br = b.row(k).data();
        for (size_t j = 0; j < n; ++j) o[j] += xk * br[j];
      }
    }
  }
  RequireFinite(out, "block_forward");
  return out;
}

CsrMatrix::CsrMatrix() : row_starts_{0} {}

CsrMatrix::CsrMatrix(size_t rows, size_t cols, std::vector<double> values,
                     std::vector<size_t> col_indices,
                     std::vector<size_t> row_starts)
    : rows_(rows),
      cols_(cols),
      values_(std::move(values)),
      col_indices_(std::move(col_indices)),
      row_starts_(std::move(row_starts)) {
  if (row_starts_.size() != rows_ + 1 || row_starts_.front() != 0) {
    throw FormatError("csr row_starts must have rows+1 entries starting at 0");
  }
  if (row_starts_.back() != values_.size() ||
      col_indices_.size() != values_.size()) {
    throw FormatError("csr array lengths disagree");
  }
  for (size_t r = 0; r < rows_; ++r) {
    const size_t begin = row_starts_[r];
    const size_t end = row_starts_[r + 1];
    if (end < begin) throw FormatError("csr row_starts decreasing");
    for (size_t p = begin; p < end; ++p) {
      if (col_indices_[p] >= cols_) {
        throw FormatError("csr column index out of range in row " +
                          std::to_string(r));
      }
      if (p > begin && col_indices_[p] <= col_indices_[p - 1]) {
        throw FormatError("csr column indices not increasing in row " +
                          std::to_string(r));
      }
    }
  }
}

CsrMatrix ToCsr(const BlockDiagMatrix& w) {
  std::vector<double> values;
  std::vector<size_t> cols;
  std::vector<size_t> starts{0};
  values.reserve(w.stored_count());
  cols.reserve(w.stored_count());
  starts.reserve(w.rows() + 1);
  for (size_t bi = 0; bi < w.num_blocks(); ++bi) {
    const Matrix& b = w.block(bi);
    const size_t c0 = w.col_offsets()[bi];
    for (size_t r = 0; r < b.rows(); ++r) {
      for (size_t c = 0; c < b.cols(); ++c) {
        values.push_back(b(r, c));
        cols.push_back(c0 + c);
      }
      starts.push_back(values.size());
    }
  }
  return CsrMatrix(w.rows(), w.cols(), std::move(values), std::move(cols),
                   std::move(starts));
}

BlockDiagMatrix FromCsr(const CsrMatrix& c, std::span<const size_t> row_offsets,
                        std::span<const size_t> col_offsets) {
  if (row_offsets.size() != col_offsets.size() || row_offsets.empty() ||
      row_offsets.front() != 0 || col_offsets.front() != 0) {
    throw FormatError("block offsets must be equal-length prefix sums from 0");
  }
  if (row_offsets.back() != c.rows() || col_offsets.back() != c.cols()) {
    throw FormatError("block offsets do not span the csr matrix");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(row_offsets.size() - 1);
  for (size_t bi = 0; bi + 1 < row_offsets.size(); ++bi) {
    if (row_offsets[bi + 1] <= row_offsets[bi] ||
        col_offsets[bi + 1] <= col_offsets[bi]) {
      throw FormatError("block offsets must be strictly increasing");
    }
    const size_t nr = row_offsets[bi + 1] - row_offsets[bi];
    const size_t nc = col_offsets[bi + 1] - col_offsets[bi];
    Matrix b(nr, nc);
    for (size_t r = 0; r < nr; ++r) {
      const size_t row = row_offsets[bi] + r;
      const size_t begin = c.row_starts()[row];
      if (c.row_starts()[row + 1] - begin != nc) {
        throw FormatError("csr row " + std::to_string(row) +
                          " does not match its block width");
      }
      for (size_t j = 0; j < nc; ++j) {
        if (c.col_indices()[begin + j] != col_offsets[bi] + j) {
          throw FormatError("csr row " + std::to_string(row) +
                            " stores entries outside its block");
        }
        b(r, j) = c.values()[begin + j];
      }
    }
    blocks.push_back(std::move(b));
  }
  return BlockDiagMatrix(std::move(blocks));
}

Matrix CsrForward(const CsrMatrix& w, const Matrix& x) {
  if (x.cols() != w.rows()) {
    throw ShapeError("csr forward input has " + std::to_string(x.cols()) +
                     " columns, matrix has " + std::to_string(w.rows()) +
                     " rows");
  }
  Matrix out(x.rows(), w.cols());
  const auto& vals = w.values();
  const auto& cols = w.col_indices();
  const auto& starts = w.row_starts();
  for (size_t r = 0; r < x.rows(); ++r) {
    const double* xr = x.row(r).data();
    double* o = out.row(r).data();
    // Scatter in ascending input index: each output column still sees its
    // products in ascending inner-index order.
    for (size_t k = 0; k < w.rows(); ++k) {
      const double xk = xr[k];
      for (size_t p = starts[k]; p < starts[k + 1]; ++p) {
        o[cols[p]] += xk * vals[p];
      }
    }
  }
  RequireFinite(out, "csr_forward");
  return out;
}

}  // namespace sian
