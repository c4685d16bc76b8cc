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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

// Textbook triple loop, inner index ascending from +0.0.
Matrix NaiveProduct(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

BlockDiagMatrix RandomBlocks(size_t count, Rng& rng) {
  std::vector<Matrix> blocks;
  for (size_t i = 0; i < count; ++i) {
    blocks.push_back(Matrix::Random(1 + rng.UniformInt(4), 1 + rng.UniformInt(4),
                                    rng));
  }
  return BlockDiagMatrix(std::move(blocks));
}

TEST(MatMulTest, IdentityLeavesMatrixUnchanged) {
  Rng rng(1);
  const Matrix b = Matrix::Random(3, 4, rng);
  EXPECT_EQ(MatMul(Matrix::Identity(3), b), b);
}

TEST(MatMulTest, SmallProduct) {
  const Matrix a = Matrix::FromRows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::FromRows({{5}, {6}});
  EXPECT_EQ(MatMul(a, b), Matrix::FromRows({{17}, {39}}));
}

TEST(MatMulTest, MatchesTripleLoopExactly) {
  Rng rng(2);
  const Matrix a = Matrix::Random(7, 5, rng);
  const Matrix b = Matrix::Random(5, 3, rng);
  EXPECT_EQ(MatMul(a, b), NaiveProduct(a, b));
}

TEST(MatMulTest, RejectsBadShapes) {
  EXPECT_THROW(MatMul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
}

TEST(MatMulTest, RejectsNonFiniteResult) {
  Matrix a = Matrix::FromRows({{std::numeric_limits<double>::infinity()}});
  EXPECT_THROW(MatMul(a, Matrix::FromRows({{1.0}})), NumericError);
}

TEST(BlockForwardTest, SingleBlockEqualsMatMul) {
  Rng rng(3);
  const Matrix w = Matrix::Random(4, 3, rng);
  const Matrix x = Matrix::Random(6, 4, rng);
  EXPECT_EQ(BlockForward(BlockDiagMatrix({w}), x), MatMul(x, w));
}

TEST(BlockForwardTest, TwoScalarBlocks) {
  const BlockDiagMatrix w({Matrix::FromRows({{2}}), Matrix::FromRows({{3}})});
  EXPECT_EQ(BlockForward(w, Matrix::FromRows({{5, 7}})),
            Matrix::FromRows({{10, 21}}));
}

TEST(BlockForwardTest, MatchesPerBlockLoop) {
  Rng rng(4);
  const BlockDiagMatrix w = RandomBlocks(20, rng);
  const Matrix x = Matrix::Random(9, w.rows(), rng);
  const Matrix got = BlockForward(w, x);
  for (size_t b = 0; b < w.num_blocks(); ++b) {
    const size_t r0 = w.row_offsets()[b];
    const size_t c0 = w.col_offsets()[b];
    const Matrix& block = w.block(b);
    for (size_t n = 0; n < x.rows(); ++n) {
      for (size_t j = 0; j < block.cols(); ++j) {
        double s = 0.0;
        for (size_t k = 0; k < block.rows(); ++k) s += x(n, r0 + k) * block(k, j);
        ASSERT_EQ(got(n, c0 + j), s);
      }
    }
  }
  // Same as the dense product over the densified matrix.
  EXPECT_EQ(got, MatMul(x, w.ToDense()));
}

TEST(BlockForwardTest, RejectsBadShapes) {
  const BlockDiagMatrix w({Matrix(2, 2)});
  EXPECT_THROW(BlockForward(w, Matrix(1, 3)), ShapeError);
}

TEST(CsrTest, IdentityBlock) {
  const CsrMatrix c = ToCsr(BlockDiagMatrix({Matrix::Identity(3)}));
  EXPECT_EQ(c.values(), (std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
  // Explicit zeros are kept; with a single dense block every row is full.
  EXPECT_EQ(c.row_starts(), (std::vector<size_t>{0, 3, 6, 9}));
  const CsrMatrix diag = ToCsr(BlockDiagMatrix(
      {Matrix::FromRows({{1}}), Matrix::FromRows({{1}}), Matrix::FromRows({{1}})}));
  EXPECT_EQ(diag.values(), (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(diag.row_starts(), (std::vector<size_t>{0, 1, 2, 3}));
  EXPECT_EQ(diag.col_indices(), (std::vector<size_t>{0, 1, 2}));
}

TEST(CsrTest, EmptyBlockList) {
  const CsrMatrix c = ToCsr(BlockDiagMatrix());
  EXPECT_EQ(c.row_starts(), std::vector<size_t>{0});
  EXPECT_EQ(c.nonzeros(), 0u);
}

TEST(CsrTest, RoundTripIsBitIdentical) {
  Rng rng(5);
  const BlockDiagMatrix w = RandomBlocks(10, rng);
  const CsrMatrix c = ToCsr(w);
  EXPECT_EQ(c.nonzeros(), w.stored_count());
  size_t area = 0;
  for (const Matrix& b : w.blocks()) area += b.rows() * b.cols();
  EXPECT_EQ(c.nonzeros(), area);
  EXPECT_EQ(FromCsr(c, w.row_offsets(), w.col_offsets()), w);
}

TEST(CsrTest, ForwardMatchesBlockForward) {
  Rng rng(6);
  const BlockDiagMatrix w = RandomBlocks(12, rng);
  const Matrix x = Matrix::Random(5, w.rows(), rng);
  EXPECT_EQ(CsrForward(ToCsr(w), x), BlockForward(w, x));
}

TEST(CsrTest, FromCsrRejectsForeignPattern) {
  const BlockDiagMatrix w({Matrix::FromRows({{1, 2}}), Matrix::FromRows({{3}})});
  const CsrMatrix c = ToCsr(w);
  const std::vector<size_t> rows{0, 1, 2};
  const std::vector<size_t> wrong_cols{0, 1, 3};
  EXPECT_THROW(FromCsr(c, rows, wrong_cols), FormatError);
  EXPECT_THROW(CsrMatrix(1, 1, {1.0}, {1}, {0, 1}), FormatError);
  EXPECT_THROW(CsrMatrix(2, 2, {1.0, 2.0}, {1, 0}, {0, 2, 2}), FormatError);
}

}  // namespace
}  // namespace sian
