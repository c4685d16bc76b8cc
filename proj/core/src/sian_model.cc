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

#include "sian/sian_model.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

void AddBiasAndMaybeRelu(Matrix& z, const std::vector<double>& bias,
                         bool relu) {
  for (size_t r = 0; r < z.rows(); ++r) {
    auto zr = z.row(r);
    for (size_t j = 0; j < zr.size(); ++j) {
      zr[j] += bias[j];
      if (relu && !(zr[j] > 0.0)) zr[j] = 0.0;
    }
  }
}

}  // namespace

std::string ModeName(ExecutionMode mode) {
  switch (mode) {
    case ExecutionMode::kDefault:
      return "default";
    case ExecutionMode::kBlockSparse:
      return "block_sparse";
    case ExecutionMode::kCompressed:
      return "compressed";
  }
  return "unknown";
}

ExecutionMode ParseMode(std::string_view name) {
  if (name == "default") return ExecutionMode::kDefault;
  if (name == "block_sparse") return ExecutionMode::kBlockSparse;
  if (name == "compressed") return ExecutionMode::kCompressed;
  throw ConfigError("unknown execution mode '" + std::string(name) + "'");
}

void GamArchitecture::Validate() const {
  std::set<InteractionSet> seen;
  for (const InteractionSet& s : family) {
    if (s.max_index() >= num_features) {
      throw ValidationError("interaction " + s.ToString() +
                            " references a feature >= d = " +
                            std::to_string(num_features));
    }
    if (!seen.insert(s).second) {
      throw ValidationError("duplicate interaction set " + s.ToString());
    }
  }
  for (size_t w : hidden_widths) {
    if (w == 0) throw ValidationError("hidden widths must be positive");
  }
}

size_t GamArchitecture::order() const {
  size_t k = 0;
  for (const InteractionSet& s : family) k = std::max(k, s.degree());
  return k;
}

std::vector<size_t> GamArchitecture::SubnetWidths(size_t t) const {
  std::vector<size_t> widths{family.at(t).degree()};
  widths.insert(widths.end(), hidden_widths.begin(), hidden_widths.end());
  widths.push_back(1);
  return widths;
}

size_t GamArchitecture::IndexOf(const InteractionSet& set) const {
  auto it = std::find(family.begin(), family.end(), set);
  if (it == family.end()) {
    throw LookupError("interaction " + set.ToString() + " is not modeled");
  }
  return static_cast<size_t>(it - family.begin());
}

std::vector<std::vector<double>> DefaultGridAxes(
    const InteractionSet& set, const std::vector<double>& feature_min,
    const std::vector<double>& feature_max) {
  size_t points = 256;
  if (set.degree() == 2) {
    points = 64;
  } else if (set.degree() >= 3) {
    points = std::max<size_t>(
        2, static_cast<size_t>(std::lround(
               std::pow(4096.0, 1.0 / static_cast<double>(set.degree())))));
  }
  std::vector<std::vector<double>> axes;
  for (size_t f : set.indices()) {
    const double lo = feature_min.at(f);
    const double hi = feature_max.at(f);
    std::vector<double> axis(points);
    for (size_t i = 0; i < points; ++i) {
      axis[i] = lo + (hi - lo) * static_cast<double>(i) /
                         static_cast<double>(points - 1);
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

SianModel::SianModel(GamArchitecture arch, double bias)
    : arch_(std::move(arch)), bias_(bias) {
  arch_.Validate();
  for (const InteractionSet& s : arch_.family) {
    gather_columns_.insert(gather_columns_.end(), s.indices().begin(),
                           s.indices().end());
  }
}

SianModel SianModel::Build(GamArchitecture arch, Rng& rng) {
  std::vector<Mlp> subnets;
  arch.Validate();
  for (size_t t = 0; t < arch.family.size(); ++t) {
    subnets.push_back(Mlp::Initialized(arch.SubnetWidths(t), rng));
  }
  return FromSubnets(std::move(arch), 0.0, std::move(subnets));
}

SianModel SianModel::FromSubnets(GamArchitecture arch, double bias,
                                 std::vector<Mlp> subnets) {
  SianModel model(std::move(arch), bias);
  if (subnets.size() != model.num_subnets()) {
    throw ShapeError("expected " + std::to_string(model.num_subnets()) +
                     " subnets, got " + std::to_string(subnets.size()));
  }
  for (size_t t = 0; t < subnets.size(); ++t) {
    if (subnets[t].widths() != model.arch_.SubnetWidths(t)) {
      throw ShapeError("subnet " + std::to_string(t) +
                       " widths do not match the architecture");
    }
  }
  model.params_ = std::move(subnets);
  return model;
}

SianModel SianModel::FromBlockLevels(GamArchitecture arch, double bias,
                                     BlockLevels levels) {
  SianModel model(std::move(arch), bias);
  const GamArchitecture& a = model.arch_;
  if (levels.weights.size() != a.depth() || levels.biases.size() != a.depth()) {
    throw ShapeError("block model needs " + std::to_string(a.depth()) +
                     " levels");
  }
  for (size_t l = 0; l < a.depth(); ++l) {
    const BlockDiagMatrix& w = levels.weights[l];
    if (w.num_blocks() != a.family.size()) {
      throw ShapeError("level " + std::to_string(l) + " has " +
                       std::to_string(w.num_blocks()) + " blocks");
    }
    for (size_t t = 0; t < a.family.size(); ++t) {
      const auto widths = a.SubnetWidths(t);
      if (w.block(t).rows() != widths[l] || w.block(t).cols() != widths[l + 1]) {
        throw ShapeError("block " + std::to_string(t) + " of level " +
                         std::to_string(l) + " has the wrong shape");
      }
    }
    if (levels.biases[l].size() != w.cols()) {
      throw ShapeError("level " + std::to_string(l) + " bias length mismatch");
    }
  }
  model.params_ = std::move(levels);
  return model;
}

SianModel SianModel::FromCompressedLevels(GamArchitecture arch, double bias,
                                          CompressedLevels levels) {
  const size_t depth = arch.depth();
  if (levels.weights.size() != depth || levels.row_offsets.size() != depth ||
      levels.col_offsets.size() != depth || levels.biases.size() != depth) {
    throw ShapeError("compressed model needs " + std::to_string(depth) +
                     " levels");
  }
  // Decoding every level validates the stored pattern against the offsets
  // and the architecture.
  BlockLevels decoded;
  for (size_t l = 0; l < depth; ++l) {
    decoded.weights.push_back(FromCsr(levels.weights[l], levels.row_offsets[l],
                                      levels.col_offsets[l]));
    decoded.biases.push_back(levels.biases[l]);
  }
  SianModel model = FromBlockLevels(std::move(arch), bias, std::move(decoded));
  model.params_ = std::move(levels);
  return model;
}

ExecutionMode SianModel::mode() const {
  switch (params_.index()) {
    case 0:
      return ExecutionMode::kDefault;
    case 1:
      return ExecutionMode::kBlockSparse;
    default:
      return ExecutionMode::kCompressed;
  }
}

size_t SianModel::parameter_count() const {
  size_t n = 1;
  for (size_t t = 0; t < num_subnets(); ++t) {
    const auto widths = arch_.SubnetWidths(t);
    for (size_t l = 0; l + 1 < widths.size(); ++l) {
      n += widths[l] * widths[l + 1] + widths[l + 1];
    }
  }
  return n;
}

void SianModel::CheckBatch(const Matrix& batch) const {
  if (batch.cols() != arch_.num_features) {
    throw ShapeError("model expects " + std::to_string(arch_.num_features) +
                     " features, batch has " + std::to_string(batch.cols()));
  }
}

Matrix SianModel::Gather(const Matrix& batch) const {
  CheckBatch(batch);
  Matrix out(batch.rows(), gather_columns_.size());
  for (size_t r = 0; r < batch.rows(); ++r) {
    const auto in = batch.row(r);
    auto o = out.row(r);
    for (size_t c = 0; c < gather_columns_.size(); ++c) {
      o[c] = in[gather_columns_[c]];
    }
  }
  return out;
}

std::vector<double> SianModel::SumOutputs(const Matrix& outputs) const {
  std::vector<double> pred(outputs.rows());
  for (size_t r = 0; r < outputs.rows(); ++r) {
    double s = bias_;
    for (size_t t = 0; t < outputs.cols(); ++t) s += outputs(r, t);
    pred[r] = s;
  }
  return pred;
}

std::vector<double> SianModel::Forward(const Matrix& batch) const {
  CheckBatch(batch);
  const size_t n = batch.rows();
  const size_t depth = arch_.depth();
  if (const auto* subnets = std::get_if<std::vector<Mlp>>(&params_)) {
    Matrix outputs(n, subnets->size());
    for (size_t t = 0; t < subnets->size(); ++t) {
      const auto& cols = arch_.family[t].indices();
      Matrix x(n, cols.size());
      for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < cols.size(); ++c) x(r, c) = batch(r, cols[c]);
      }
      const std::vector<double> out = (*subnets)[t].Forward(x);
      for (size_t r = 0; r < n; ++r) outputs(r, t) = out[r];
    }
    return SumOutputs(outputs);
  }
  Matrix a = Gather(batch);
  if (const auto* blocks = std::get_if<BlockLevels>(&params_)) {
    for (size_t l = 0; l < depth; ++l) {
      a = BlockForward(blocks->weights[l], a);
      AddBiasAndMaybeRelu(a, blocks->biases[l], l + 1 < depth);
    }
  } else {
    const auto& csr = std::get<CompressedLevels>(params_);
    for (size_t l = 0; l < depth; ++l) {
      a = CsrForward(csr.weights[l], a);
      AddBiasAndMaybeRelu(a, csr.biases[l], l + 1 < depth);
    }
  }
  return SumOutputs(a);
}

SianModel::BlockLevels SianModel::ToBlockLevels() const {
  if (const auto* blocks = std::get_if<BlockLevels>(&params_)) return *blocks;
  BlockLevels levels;
  if (const auto* csr = std::get_if<CompressedLevels>(&params_)) {
    for (size_t l = 0; l < csr->weights.size(); ++l) {
      levels.weights.push_back(FromCsr(csr->weights[l], csr->row_offsets[l],
                                       csr->col_offsets[l]));
      levels.biases.push_back(csr->biases[l]);
    }
    return levels;
  }
  const auto& subnets = std::get<std::vector<Mlp>>(params_);
  for (size_t l = 0; l < arch_.depth(); ++l) {
    std::vector<Matrix> blocks;
    std::vector<double> bias;
    for (const Mlp& net : subnets) {
      blocks.push_back(net.weight(l));
      bias.insert(bias.end(), net.bias(l).begin(), net.bias(l).end());
    }
    levels.weights.emplace_back(std::move(blocks));
    levels.biases.push_back(std::move(bias));
  }
  return levels;
}

std::vector<Mlp> SianModel::ToSubnets() const {
  if (const auto* subnets = std::get_if<std::vector<Mlp>>(&params_)) {
    return *subnets;
  }
  std::vector<Mlp> subnets;
  for (size_t t = 0; t < num_subnets(); ++t) subnets.push_back(Subnet(t));
  return subnets;
}

Mlp SianModel::Subnet(size_t t) const {
  if (t >= num_subnets()) throw LookupError("no subnet " + std::to_string(t));
  if (const auto* subnets = std::get_if<std::vector<Mlp>>(&params_)) {
    return (*subnets)[t];
  }
  Mlp net(arch_.SubnetWidths(t));
  auto copy_level = [&](size_t l, const Matrix& block,
                        const std::vector<double>& level_bias,
                        size_t col_offset) {
    std::vector<double> b(level_bias.begin() + col_offset,
                          level_bias.begin() + col_offset + block.cols());
    net.SetLayer(l, block, std::move(b));
  };
  if (const auto* blocks = std::get_if<BlockLevels>(&params_)) {
    for (size_t l = 0; l < arch_.depth(); ++l) {
      const BlockDiagMatrix& w = blocks->weights[l];
      copy_level(l, w.block(t), blocks->biases[l], w.col_offsets()[t]);
    }
    return net;
  }
  const auto& csr = std::get<CompressedLevels>(params_);
  for (size_t l = 0; l < arch_.depth(); ++l) {
    const CsrMatrix& c = csr.weights[l];
    const size_t r0 = csr.row_offsets[l][t];
    const size_t r1 = csr.row_offsets[l][t + 1];
    const size_t c0 = csr.col_offsets[l][t];
    const size_t c1 = csr.col_offsets[l][t + 1];
    Matrix block(r1 - r0, c1 - c0);
    for (size_t r = r0; r < r1; ++r) {
      for (size_t p = c.row_starts()[r]; p < c.row_starts()[r + 1]; ++p) {
        block(r - r0, c.col_indices()[p] - c0) = c.values()[p];
      }
    }
    copy_level(l, block, csr.biases[l], c0);
  }
  return net;
}

SianModel SianModel::Converted(ExecutionMode target) const {
  switch (target) {
    case ExecutionMode::kDefault:
      return FromSubnets(arch_, bias_, ToSubnets());
    case ExecutionMode::kBlockSparse:
      return FromBlockLevels(arch_, bias_, ToBlockLevels());
    case ExecutionMode::kCompressed: {
      if (mode() == ExecutionMode::kCompressed) return *this;
      BlockLevels blocks = ToBlockLevels();
      CompressedLevels levels;
      for (size_t l = 0; l < blocks.weights.size(); ++l) {
        levels.weights.push_back(ToCsr(blocks.weights[l]));
        levels.row_offsets.push_back(blocks.weights[l].row_offsets());
        levels.col_offsets.push_back(blocks.weights[l].col_offsets());
      }
      levels.biases = std::move(blocks.biases);
      SianModel model(arch_, bias_);
      model.params_ = std::move(levels);
      return model;
    }
  }
  throw StateError("unknown execution mode");
}

ShapeGrid SianModel::EvalShape(const InteractionSet& set,
                               std::vector<std::vector<double>> axes) const {
  const size_t t = arch_.IndexOf(set);
  if (axes.size() != set.degree()) {
    throw ShapeError("grid needs one axis per feature of " + set.ToString());
  }
  size_t points = 1;
  for (const auto& axis : axes) {
    if (axis.empty()) throw ShapeError("grid axis is empty");
    points *= axis.size();
  }
  Matrix grid(points, axes.size());
  for (size_t p = 0; p < points; ++p) {
    size_t rem = p;
    for (size_t a = axes.size(); a-- > 0;) {
      grid(p, a) = axes[a][rem % axes[a].size()];
      rem /= axes[a].size();
    }
  }
  ShapeGrid out{set, std::move(axes), Subnet(t).Forward(grid)};
  return out;
}

const std::vector<Mlp>& SianModel::subnets() const {
  if (const auto* s = std::get_if<std::vector<Mlp>>(&params_)) return *s;
  throw StateError("model is in " + ModeName(mode()) + " mode, not default");
}

const SianModel::BlockLevels& SianModel::block_levels() const {
  if (const auto* b = std::get_if<BlockLevels>(&params_)) return *b;
  throw StateError("model is in " + ModeName(mode()) +
                   " mode, not block_sparse");
}

const SianModel::CompressedLevels& SianModel::compressed_levels() const {
  if (const auto* c = std::get_if<CompressedLevels>(&params_)) return *c;
  throw StateError("model is in " + ModeName(mode()) + " mode, not compressed");
}

}  // namespace sian
