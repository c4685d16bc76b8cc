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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

SianModel Model(ExecutionMode mode) {
  GamArchitecture arch;
  arch.num_features = 4;
  arch.family = {{0}, {1, 3}, {0, 2, 3}};
  arch.hidden_widths = {3, 2};
  arch.head = TaskHead::Classification();
  Rng rng(1);
  SianModel model = SianModel::Build(arch, rng);
  model.set_bias(0.1 + 0.2);
  return model.Converted(mode);
}

class ModelIoModeTest : public ::testing::TestWithParam<ExecutionMode> {};

TEST_P(ModelIoModeTest, RoundTripIsExact) {
  const SianModel model = Model(GetParam());
  const SianModel back = ParseSianModel(SerializeSianModel(model));
  EXPECT_EQ(back.mode(), model.mode());
  EXPECT_EQ(back.bias(), model.bias());
  EXPECT_EQ(back.architecture().family, model.architecture().family);
  EXPECT_EQ(back.architecture().head, model.architecture().head);
  Rng rng(2);
  const Matrix x = Matrix::Random(20, 4, rng, -3, 3);
  EXPECT_EQ(back.Forward(x), model.Forward(x));
  EXPECT_EQ(SerializeSianModel(back), SerializeSianModel(model));
}

INSTANTIATE_TEST_SUITE_P(AllModes, ModelIoModeTest,
                         ::testing::Values(ExecutionMode::kDefault,
                                           ExecutionMode::kBlockSparse,
                                           ExecutionMode::kCompressed));

TEST(ModelIoTest, CompressedDocumentListsPattern) {
  const nlohmann::json doc = SianModelToJson(Model(ExecutionMode::kCompressed));
  EXPECT_EQ(doc["format"], "sian-model");
  EXPECT_EQ(doc["mode"], "compressed");
  ASSERT_EQ(doc["levels"].size(), 3u);
  EXPECT_TRUE(doc["levels"][0].contains("row_starts"));
}

TEST(ModelIoTest, BiasOnlyModelRoundTrips) {
  GamArchitecture arch;
  arch.num_features = 2;
  Rng rng(3);
  SianModel model = SianModel::Build(arch, rng);
  model.set_bias(-2.5);
  const SianModel back = SianModelFromJson(SianModelToJson(model));
  EXPECT_EQ(back.num_subnets(), 0u);
  EXPECT_EQ(back.Forward(Matrix(1, 2))[0], -2.5);
}

TEST(ModelIoTest, MalformedDocumentsAreFormatErrors) {
  nlohmann::json doc = SianModelToJson(Model(ExecutionMode::kDefault));
  nlohmann::json wrong_format = doc;
  wrong_format["format"] = "mlp";
  EXPECT_THROW(SianModelFromJson(wrong_format), FormatError);
  nlohmann::json missing = doc;
  missing.erase("subnets");
  EXPECT_THROW(SianModelFromJson(missing), FormatError);
  nlohmann::json ragged = doc;
  ragged["subnets"][0]["layers"][0]["weight"].push_back(1.0);
  EXPECT_THROW(SianModelFromJson(ragged), FormatError);
  nlohmann::json bad_set = doc;
  bad_set["family"][1] = {3, 1};
  EXPECT_THROW(SianModelFromJson(bad_set), FormatError);
  EXPECT_THROW(ParseSianModel("{not json"), FormatError);
  nlohmann::json bad_csr = SianModelToJson(Model(ExecutionMode::kCompressed));
  bad_csr["levels"][0]["col_indices"][0] = 99;
  EXPECT_THROW(SianModelFromJson(bad_csr), FormatError);
}

TEST(ModelIoTest, MlpRoundTrip) {
  Rng rng(4);
  const Mlp net = Mlp::Initialized({3, 4, 1}, rng);
  const Mlp back = MlpFromJson(MlpToJson(net));
  const Matrix x = Matrix::Random(5, 3, rng);
  EXPECT_EQ(back.Forward(x), net.Forward(x));
  EXPECT_THROW(MlpFromJson(nlohmann::json::object()), FormatError);
}

TEST(ModelIoTest, FileHelpers) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "sian_model_io_test";
  std::filesystem::create_directories(dir);
  const nlohmann::json doc = {{"a", 0.1}, {"b", {1, 2}}};
  WriteJsonFile(dir / "x.json", doc);
  EXPECT_EQ(ReadJsonFile(dir / "x.json"), doc);
  EXPECT_THROW(ReadJsonFile(dir / "missing.json"), ConfigError);
  std::ofstream(dir / "bad.json") << "{";
  EXPECT_THROW(ReadJsonFile(dir / "bad.json"), FormatError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sian
