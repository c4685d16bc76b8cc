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

#ifndef SIAN_SIAN_MODEL_H_
#define SIAN_SIAN_MODEL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sian/interaction_set.h"
#include "sian/loss.h"
#include "sian/mlp.h"
#include "sian/tensor.h"

namespace sian {

class Rng;

// How the shape subnetworks' parameters are laid out.
//   kDefault      one Mlp per interaction set, evaluated one after another
//   kBlockSparse  one BlockDiagMatrix per depth level, all subnets at once
//   kCompressed   the block-diagonal levels stored as CsrMatrix
enum class ExecutionMode { kDefault, kBlockSparse, kCompressed };

std::string ModeName(ExecutionMode mode);
// Accepts "default", "block_sparse", "compressed".
ExecutionMode ParseMode(std::string_view name);

struct GamArchitecture {
  size_t num_features = 0;
  std::vector<InteractionSet> family;
  // Hidden layer widths shared by every subnet.
  std::vector<size_t> hidden_widths{16, 12, 8};
  TaskHead head;

  // Throws ValidationError on duplicate sets, indices >= num_features or
  // zero widths.
  void Validate() const;
  // Largest interaction cardinality; 0 for a bias-only model.
  size_t order() const;
  size_t depth() const { return hidden_widths.size() + 1; }
  // [|I_t|, hidden..., 1].
  std::vector<size_t> SubnetWidths(size_t t) const;
  // Index of `set` in the family or LookupError.
  size_t IndexOf(const InteractionSet& set) const;
};

// Values of one shape function on a tensor grid. values is row-major over the
// axes (last axis fastest) and excludes the model bias.
struct ShapeGrid {
  InteractionSet interaction;
  std::vector<std::vector<double>> axes;
  std::vector<double> values;
};

// Grid used when none is given: 256 points for one feature, 64 per axis for
// two, 16 for three and roughly 4096^(1/k) beyond, spanning [lo, hi] per axis.
std::vector<std::vector<double>> DefaultGridAxes(
    const InteractionSet& set, const std::vector<double>& feature_min,
    const std::vector<double>& feature_max);

// g(y) = bias + sum_t subnet_t(x restricted to I_t), summed in family order.
class SianModel {
 public:
  struct BlockLevels {
    std::vector<BlockDiagMatrix> weights;
    std::vector<std::vector<double>> biases;
  };
  struct CompressedLevels {
    std::vector<CsrMatrix> weights;
    std::vector<std::vector<size_t>> row_offsets;
    std::vector<std::vector<size_t>> col_offsets;
    std::vector<std::vector<double>> biases;
  };

  // One Glorot-initialized subnet per set, bias 0, default mode.
  static SianModel Build(GamArchitecture arch, Rng& rng);

  static SianModel FromSubnets(GamArchitecture arch, double bias,
                               std::vector<Mlp> subnets);
  static SianModel FromBlockLevels(GamArchitecture arch, double bias,
                                   BlockLevels levels);
  static SianModel FromCompressedLevels(GamArchitecture arch, double bias,
                                        CompressedLevels levels);

  const GamArchitecture& architecture() const { return arch_; }
  ExecutionMode mode() const;
  size_t num_subnets() const { return arch_.family.size(); }
  size_t num_features() const { return arch_.num_features; }
  double bias() const { return bias_; }
  void set_bias(double bias) { bias_ = bias; }

  // Subnet weights and biases plus the scalar bias.
  size_t parameter_count() const;

  // Predictions (logits for classification). ShapeError unless
  // batch.cols() == num_features().
  std::vector<double> Forward(const Matrix& batch) const;

  // Same parameters in another layout; forward results are bit-identical.
  SianModel Converted(ExecutionMode target) const;

  // Subnet t as a standalone network, whatever the current mode.
  Mlp Subnet(size_t t) const;

  // Evaluates only the subnet of `set` on the cartesian grid of `axes`.
  // LookupError if the set is not in the family.
  ShapeGrid EvalShape(const InteractionSet& set,
                      std::vector<std::vector<double>> axes) const;

  // Columns of a batch concatenated per interaction set, in family order.
  const std::vector<size_t>& gather_columns() const { return gather_columns_; }
  Matrix Gather(const Matrix& batch) const;

  // Representation accessors; StateError when the model is in another mode.
  const std::vector<Mlp>& subnets() const;
  const BlockLevels& block_levels() const;
  const CompressedLevels& compressed_levels() const;

 private:
  SianModel(GamArchitecture arch, double bias);

  void CheckBatch(const Matrix& batch) const;
  std::vector<double> SumOutputs(const Matrix& outputs) const;
  BlockLevels ToBlockLevels() const;
  std::vector<Mlp> ToSubnets() const;

  GamArchitecture arch_;
  double bias_ = 0.0;
  std::vector<size_t> gather_columns_;
  std::variant<std::vector<Mlp>, BlockLevels, CompressedLevels> params_;
};

}  // namespace sian

#endif  // SIAN_SIAN_MODEL_H_
