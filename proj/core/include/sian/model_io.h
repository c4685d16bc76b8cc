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

#ifndef SIAN_MODEL_IO_H_
#define SIAN_MODEL_IO_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sian/mlp.h"
#include "sian/sian_model.h"

namespace sian {

// JSON documents for models. Floating values are written in the shortest
// form that parses back to the identical double, so a save/load round-trip
// is value-exact. Loaders throw FormatError on malformed documents.
//
// SIAN layout:
//   {"format": "sian-model", "version": 1, "num_features": d,
//    "family": [[i, ...], ...], "hidden_widths": [...], "task": "...",
//    "mode": "default" | "block_sparse" | "compressed", "bias": b, ...}
// followed by the parameters of the mode:
//   default       "subnets": [{"layers": [{"weight": [...], "bias": [...]}]}]
//   block_sparse  "levels": [{"blocks": [[...], ...], "bias": [...]}]
//   compressed    "levels": [{"rows", "cols", "values", "col_indices",
//                             "row_starts", "row_offsets", "col_offsets",
//                             "bias"}]
// Weight arrays are row-major, inputs by outputs.
nlohmann::json SianModelToJson(const SianModel& model);
SianModel SianModelFromJson(const nlohmann::json& doc);

//   {"format": "mlp", "version": 1, "widths": [...],
//    "layers": [{"weight": [...], "bias": [...]}]}
nlohmann::json MlpToJson(const Mlp& net);
Mlp MlpFromJson(const nlohmann::json& doc);

// Compact single-line serialization (no whitespace).
std::string SerializeSianModel(const SianModel& model);
SianModel ParseSianModel(const std::string& text);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
// Writes `doc` with the given indentation (-1 for compact) plus a newline.
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& doc,
                   int indent = 2);

}  // namespace sian

#endif  // SIAN_MODEL_IO_H_
