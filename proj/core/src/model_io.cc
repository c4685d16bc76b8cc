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

#include "sian/model_io.h"

#include <fstream>
#include <sstream>

#include "sian/errors.h"

namespace sian {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

template <typename T>
T Get(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

json LayerToJson(const Matrix& w, const std::vector<double>& b) {
  return json{{"weight", std::vector<double>(w.data().begin(), w.data().end())},
              {"bias", b}};
}

Matrix MatrixFrom(std::vector<double> data, size_t rows, size_t cols,
                  const std::string& where) {
  if (data.size() != rows * cols) {
    throw FormatError(where + ": expected " + std::to_string(rows * cols) +
                      " weights, found " + std::to_string(data.size()));
  }
  return Matrix(rows, cols, std::move(data));
}

Mlp MlpFromLayers(const json& layers, std::vector<size_t> widths,
                  const std::string& where) {
  Mlp net(widths);
  if (!layers.is_array() || layers.size() != net.num_layers()) {
    throw FormatError(where + ": wrong number of layers");
  }
  for (size_t l = 0; l < net.num_layers(); ++l) {
    const std::string at = where + " layer " + std::to_string(l);
    Matrix w = MatrixFrom(Get<std::vector<double>>(layers[l], "weight"),
                          widths[l], widths[l + 1], at);
    auto b = Get<std::vector<double>>(layers[l], "bias");
    if (b.size() != widths[l + 1]) throw FormatError(at + ": bias length");
    net.SetLayer(l, std::move(w), std::move(b));
  }
  return net;
}

}  // namespace

json SianModelToJson(const SianModel& model) {
  const GamArchitecture& arch = model.architecture();
  json family = json::array();
  for (const InteractionSet& s : arch.family) family.push_back(s.indices());
  json doc{{"format", "sian-model"},
           {"version", kFormatVersion},
           {"num_features", arch.num_features},
           {"family", family},
           {"hidden_widths", arch.hidden_widths},
           {"task", arch.head.name()},
           {"mode", ModeName(model.mode())},
           {"bias", model.bias()}};
  switch (model.mode()) {
    case ExecutionMode::kDefault: {
      json subnets = json::array();
      for (const Mlp& net : model.subnets()) {
        json layers = json::array();
        for (size_t l = 0; l < net.num_layers(); ++l) {
          layers.push_back(LayerToJson(net.weight(l), net.bias(l)));
        }
        subnets.push_back(json{{"layers", layers}});
      }
      doc["subnets"] = subnets;
      break;
    }
    case ExecutionMode::kBlockSparse: {
      const auto& levels = model.block_levels();
      json out = json::array();
      for (size_t l = 0; l < levels.weights.size(); ++l) {
        json blocks = json::array();
        for (const Matrix& b : levels.weights[l].blocks()) {
          blocks.push_back(std::vector<double>(b.data().begin(), b.data().end()));
        }
        out.push_back(json{{"blocks", blocks}, {"bias", levels.biases[l]}});
      }
      doc["levels"] = out;
      break;
    }
    case ExecutionMode::kCompressed: {
      const auto& levels = model.compressed_levels();
      json out = json::array();
      for (size_t l = 0; l < levels.weights.size(); ++l) {
        const CsrMatrix& c = levels.weights[l];
        out.push_back(json{{"rows", c.rows()},
                           {"cols", c.cols()},
                           {"values", c.values()},
                           {"col_indices", c.col_indices()},
                           {"row_starts", c.row_starts()},
                           {"row_offsets", levels.row_offsets[l]},
                           {"col_offsets", levels.col_offsets[l]},
                           {"bias", levels.biases[l]}});
      }
      doc["levels"] = out;
      break;
    }
  }
  return doc;
}

SianModel SianModelFromJson(const json& doc) {
  if (Get<std::string>(doc, "format") != "sian-model") {
    throw FormatError("not a sian-model document");
  }
  if (Get<int>(doc, "version") != kFormatVersion) {
    throw FormatError("unsupported sian-model version");
  }
  GamArchitecture arch;
  arch.num_features = Get<size_t>(doc, "num_features");
  arch.hidden_widths = Get<std::vector<size_t>>(doc, "hidden_widths");
  try {
    arch.head = TaskHead::FromName(Get<std::string>(doc, "task"));
    for (const auto& s : Get<std::vector<std::vector<size_t>>>(doc, "family")) {
      arch.family.emplace_back(s);
    }
    arch.Validate();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid architecture: ") + e.what());
  }
  const double bias = Get<double>(doc, "bias");
  ExecutionMode mode;
  try {
    mode = ParseMode(Get<std::string>(doc, "mode"));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
  try {
    switch (mode) {
      case ExecutionMode::kDefault: {
        const json& subnets = doc.at("subnets");
        if (!subnets.is_array() || subnets.size() != arch.family.size()) {
          throw FormatError("subnet count does not match the family");
        }
        std::vector<Mlp> nets;
        for (size_t t = 0; t < subnets.size(); ++t) {
          nets.push_back(MlpFromLayers(subnets[t].at("layers"),
                                       arch.SubnetWidths(t),
                                       "subnet " + std::to_string(t)));
        }
        return SianModel::FromSubnets(std::move(arch), bias, std::move(nets));
      }
      case ExecutionMode::kBlockSparse: {
        const json& levels = doc.at("levels");
        if (!levels.is_array() || levels.size() != arch.depth()) {
          throw FormatError("level count does not match the depth");
        }
        SianModel::BlockLevels out;
        for (size_t l = 0; l < levels.size(); ++l) {
          const json& blocks = levels[l].at("blocks");
          if (!blocks.is_array() || blocks.size() != arch.family.size()) {
            throw FormatError("block count does not match the family");
          }
          std::vector<Matrix> mats;
          for (size_t t = 0; t < blocks.size(); ++t) {
            const auto widths = arch.SubnetWidths(t);
            mats.push_back(MatrixFrom(blocks[t].get<std::vector<double>>(),
                                      widths[l], widths[l + 1],
                                      "level " + std::to_string(l) + " block " +
                                          std::to_string(t)));
          }
          out.weights.emplace_back(std::move(mats));
          out.biases.push_back(Get<std::vector<double>>(levels[l], "bias"));
        }
        return SianModel::FromBlockLevels(std::move(arch), bias, std::move(out));
      }
      case ExecutionMode::kCompressed: {
        const json& levels = doc.at("levels");
        if (!levels.is_array()) throw FormatError("levels must be an array");
        SianModel::CompressedLevels out;
        for (const json& level : levels) {
          out.weights.emplace_back(
              Get<size_t>(level, "rows"), Get<size_t>(level, "cols"),
              Get<std::vector<double>>(level, "values"),
              Get<std::vector<size_t>>(level, "col_indices"),
              Get<std::vector<size_t>>(level, "row_starts"));
          out.row_offsets.push_back(
              Get<std::vector<size_t>>(level, "row_offsets"));
          out.col_offsets.push_back(
              Get<std::vector<size_t>>(level, "col_offsets"));
          out.biases.push_back(Get<std::vector<double>>(level, "bias"));
        }
        return SianModel::FromCompressedLevels(std::move(arch), bias,
                                               std::move(out));
      }
    }
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed parameters: ") + e.what());
  } catch (const Error& e) {
    throw FormatError(std::string("inconsistent parameters: ") + e.what());
  }
  throw FormatError("unknown mode");
}

json MlpToJson(const Mlp& net) {
  json layers = json::array();
  for (size_t l = 0; l < net.num_layers(); ++l) {
    layers.push_back(LayerToJson(net.weight(l), net.bias(l)));
  }
  return json{{"format", "mlp"},
              {"version", kFormatVersion},
              {"widths", net.widths()},
              {"layers", layers}};
}

Mlp MlpFromJson(const json& doc) {
  if (Get<std::string>(doc, "format") != "mlp") {
    throw FormatError("not an mlp document");
  }
  try {
    return MlpFromLayers(doc.at("layers"),
                         Get<std::vector<size_t>>(doc, "widths"), "mlp");
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed mlp: ") + e.what());
  } catch (const Error& e) {
    throw FormatError(std::string("invalid mlp: ") + e.what());
  }
}

std::string SerializeSianModel(const SianModel& model) {
  return SianModelToJson(model).dump();
}

SianModel ParseSianModel(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("not valid json: ") + e.what());
  }
  return SianModelFromJson(doc);
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + " is not valid json: " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const json& doc,
                   int indent) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(indent) << '\n';
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace sian
