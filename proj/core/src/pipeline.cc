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

#include "sian/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "sian/archipelago.h"
#include "sian/errors.h"
#include "sian/metrics.h"
#include "sian/model_io.h"
#include "sian/oracle_suite.h"
#include "sian/rng.h"

namespace sian {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Rejects keys outside `allowed` so that typos in a config do not pass
// silently.
void CheckKeys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void Read(const json& obj, const char* key, const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

NetworkConfig ReadNetwork(const json& obj, const std::string& where,
                          NetworkConfig net) {
  CheckKeys(obj, where,
            {"hidden_widths", "lr", "eps", "epochs", "l1", "batch_size",
             "patience", "mode"});
  Read(obj, "hidden_widths", where, net.hidden_widths);
  Read(obj, "lr", where, net.train.optimizer.learning_rate);
  Read(obj, "eps", where, net.train.optimizer.epsilon);
  Read(obj, "epochs", where, net.train.max_epochs);
  Read(obj, "l1", where, net.train.l1);
  Read(obj, "batch_size", where, net.train.batch_size);
  Read(obj, "patience", where, net.train.patience);
  if (!(net.train.optimizer.learning_rate > 0.0)) {
    throw ConfigError(where + ".lr must be positive");
  }
  if (net.train.batch_size == 0) {
    throw ConfigError(where + ".batch_size must be positive");
  }
  if (!(net.train.l1 >= 0.0)) throw ConfigError(where + ".l1 must be >= 0");
  return net;
}

// Independent seed for a named stream of random draws.
uint64_t StreamSeed(uint64_t seed, uint64_t stream) {
  Rng rng(seed ^ (stream * 0x9E3779B97F4A7C15ULL));
  return rng.NextU64();
}

enum Stream : uint64_t {
  kDnnInit = 1,
  kDnnShuffle = 2,
  kSianInit = 3,
  kSianShuffle = 4,
  kDetection = 5,
};

uint64_t FoldStream(Stream s, size_t fold) { return 16 * fold + s; }

uint64_t SeedOf(const ExperimentConfig& config, const CommandOptions& options) {
  if (options.seed) return *options.seed;
  if (config.seed) return *config.seed;
  throw ConfigError("a seed is required (config \"seed\" or --seed)");
}

fs::path OutDir(const ExperimentConfig& config, const CommandOptions& options) {
  const fs::path dir = options.out ? *options.out : config.output_dir;
  fs::create_directories(dir);
  return dir;
}

fs::path FoldDir(const fs::path& out, size_t fold) {
  const fs::path dir = out / ("fold_" + std::to_string(fold));
  fs::create_directories(dir);
  return dir;
}

fs::path RequireFile(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) {
    throw ConfigError(what + " not found: " + path.string());
  }
  return path;
}

Dataset LoadData(const ExperimentConfig& config) {
  if (config.data_path.empty()) throw ConfigError("config names no data path");
  RequireFile(config.data_path, "data file");
  return LoadCsv(config.data_path, config.schema);
}

struct Fold {
  Standardizer standardizer;
  Dataset train;
  Dataset val;
  Dataset test;
};

Fold PrepareFold(const Dataset& data, const Split& split, size_t f) {
  const std::vector<size_t> train_rows = split.TrainRows(f);
  const Dataset raw_train = data.Rows(train_rows);
  Fold fold;
  fold.standardizer = Standardizer::Fit(raw_train);
  fold.train = fold.standardizer.Transform(raw_train);
  fold.val = fold.standardizer.Transform(data.Rows(split.folds[f]));
  fold.test = fold.standardizer.Transform(data.Rows(split.test));
  return fold;
}

void LogTraining(std::ostream& log, const char* what, size_t fold,
                 const std::vector<EpochRecord>& trace, size_t best) {
  log << what << " fold " << fold << ": " << trace.size() << " epochs, best "
      << best;
  if (best > 0) log << " (val loss " << trace[best - 1].val_loss << ")";
  log << '\n';
}

void AddMetrics(std::map<std::string, std::vector<double>>& acc,
                const std::map<std::string, double>& m) {
  for (const auto& [name, v] : m) acc[name].push_back(v);
}

json SummaryJson(const std::map<std::string, std::vector<double>>& acc) {
  std::map<std::string, MetricSummary> out;
  for (const auto& [name, values] : acc) out[name] = Summarize(values);
  return MetricsToJson(out);
}

void SetRange(ModelArtifact& artifact, const Matrix& x) {
  artifact.feature_min.assign(x.cols(), 0.0);
  artifact.feature_max.assign(x.cols(), 0.0);
  for (size_t j = 0; j < x.cols(); ++j) {
    for (size_t r = 0; r < x.rows(); ++r) {
      artifact.feature_min[j] = r ? std::min(artifact.feature_min[j], x(r, j))
                                  : x(r, j);
      artifact.feature_max[j] = r ? std::max(artifact.feature_max[j], x(r, j))
                                  : x(r, j);
    }
  }
}

ModelArtifact LoadArtifact(const fs::path& path) {
  RequireFile(path, "model file");
  return ModelArtifact::FromJson(ReadJsonFile(path));
}

int TrainDnn(const ExperimentConfig& config, const CommandOptions& options,
             std::ostream& log) {
  const uint64_t seed = SeedOf(config, options);
  const fs::path out = OutDir(config, options);
  const Dataset data = LoadData(config);
  SplitPlan plan = config.split;
  plan.seed = seed;
  const Split split = MakeSplit(data.num_rows(), plan);
  std::map<std::string, std::vector<double>> metrics;
  for (size_t f = 0; f < split.folds.size(); ++f) {
    const Fold fold = PrepareFold(data, split, f);
    std::vector<size_t> widths{fold.train.num_features()};
    widths.insert(widths.end(), config.dnn.hidden_widths.begin(),
                  config.dnn.hidden_widths.end());
    widths.push_back(1);
    Rng init(StreamSeed(seed, FoldStream(kDnnInit, f)));
    TrainConfig tc = config.dnn.train;
    tc.seed = StreamSeed(seed, FoldStream(kDnnShuffle, f));
    const MlpTrainResult result =
        TrainMlp(Mlp::Initialized(widths, init), data.head, fold.train.x,
                 fold.train.y, fold.val.x, fold.val.y, tc);
    LogTraining(log, "dnn", f, result.trace, result.best_epoch);

    ModelArtifact artifact;
    artifact.kind = ModelArtifact::Kind::kDnn;
    artifact.fold = f;
    artifact.feature_names = data.feature_names;
    artifact.standardizer = fold.standardizer;
    SetRange(artifact, fold.train.x);
    artifact.head = data.head;
    artifact.dnn = result.model;
    WriteJsonFile(FoldDir(out, f) / "dnn.json", artifact.ToJson(), -1);
    AddMetrics(metrics, TaskMetrics(data.head, artifact.Predict(fold.test.x),
                                    fold.test.y));
  }
  WriteJsonFile(out / "dnn_metrics.json", SummaryJson(metrics));
  log << "wrote " << (out / "dnn_metrics.json").string() << '\n';
  return 0;
}

void RunFisOnce(const ExperimentConfig& config, const ModelArtifact& artifact,
                const Dataset& validation, uint64_t seed, const fs::path& dir,
                std::ostream& log) {
  const size_t d = validation.num_features();
  Baseline baseline = Baseline::Zero(d);
  if (config.detection.baseline == "reflect") {
    baseline = Baseline::Reflect();
  } else if (config.detection.baseline != "zero") {
    throw ConfigError("fis.baseline must be \"zero\" or \"reflect\"");
  }
  DetectionContext ctx(
      [&artifact](const Matrix& rows) { return artifact.Predict(rows); },
      validation.x, std::move(baseline), config.detection.max_samples,
      StreamSeed(seed, FoldStream(kDetection, artifact.fold)));
  const FisResult result = SelectInteractions(ctx, config.detection.fis);
  for (const std::string& w : result.warnings) log << "warning: " << w << '\n';
  WriteJsonFile(dir / "family.json", FamilyToJson(result.family, d));
  std::ofstream csv(dir / "scores.csv");
  if (!csv) throw ConfigError("cannot write " + (dir / "scores.csv").string());
  result.scores.WriteCsv(csv);
  log << "fis fold " << artifact.fold << ": " << result.family.size()
      << " sets selected from " << result.scores.entries().size()
      << " candidates\n";
}

int Fis(const ExperimentConfig& config, const CommandOptions& options,
        std::ostream& log) {
  const uint64_t seed = SeedOf(config, options);
  const fs::path out = OutDir(config, options);
  if (options.model) {
    const ModelArtifact artifact = LoadArtifact(*options.model);
    Dataset validation;
    if (options.data) {
      CsvSchema schema = config.schema;
      schema.head = artifact.head;
      validation = artifact.standardizer.Transform(LoadCsv(*options.data, schema));
    } else {
      const Dataset data = LoadData(config);
      SplitPlan plan = config.split;
      plan.seed = seed;
      const Split split = MakeSplit(data.num_rows(), plan);
      if (artifact.fold >= split.folds.size()) {
        throw ValidationError("model fold does not exist in this split");
      }
      validation =
          artifact.standardizer.Transform(data.Rows(split.folds[artifact.fold]));
    }
    RunFisOnce(config, artifact, validation, seed, out, log);
    return 0;
  }
  const Dataset data = LoadData(config);
  SplitPlan plan = config.split;
  plan.seed = seed;
  const Split split = MakeSplit(data.num_rows(), plan);
  for (size_t f = 0; f < split.folds.size(); ++f) {
    const fs::path dir = FoldDir(out, f);
    const ModelArtifact artifact = LoadArtifact(dir / "dnn.json");
    const Dataset validation =
        artifact.standardizer.Transform(data.Rows(split.folds[f]));
    RunFisOnce(config, artifact, validation, seed, dir, log);
  }
  return 0;
}

int TrainSianCommand(const ExperimentConfig& config,
                     const CommandOptions& options, std::ostream& log) {
  const uint64_t seed = SeedOf(config, options);
  const fs::path out = OutDir(config, options);
  const Dataset data = LoadData(config);
  SplitPlan plan = config.split;
  plan.seed = seed;
  const Split split = MakeSplit(data.num_rows(), plan);
  std::map<std::string, std::vector<double>> metrics;
  for (size_t f = 0; f < split.folds.size(); ++f) {
    const fs::path dir = FoldDir(out, f);
    const fs::path family_path =
        options.family ? *options.family : dir / "family.json";
    size_t family_features = 0;
    const InteractionFamily family = FamilyFromJson(
        ReadJsonFile(RequireFile(family_path, "family file")), &family_features);
    const Fold fold = PrepareFold(data, split, f);
    const size_t d = fold.train.num_features();
    if (family_features != d) {
      throw ValidationError("family was selected for " +
                            std::to_string(family_features) +
                            " features but the data has " + std::to_string(d));
    }
    const GamArchitecture arch =
        FamilyToArchitecture(family, d, config.sian.hidden_widths, data.head);
    Rng init(StreamSeed(seed, FoldStream(kSianInit, f)));
    const SianModel start =
        SianModel::Build(arch, init).Converted(config.sian_mode);
    TrainConfig tc = config.sian.train;
    tc.seed = StreamSeed(seed, FoldStream(kSianShuffle, f));
    SianTrainResult result = TrainSian(start, fold.train.x, fold.train.y,
                                       fold.val.x, fold.val.y, tc);
    LogTraining(log, "sian", f, result.trace, result.best_epoch);

    ModelArtifact artifact;
    artifact.kind = ModelArtifact::Kind::kSian;
    artifact.fold = f;
    artifact.feature_names = data.feature_names;
    artifact.standardizer = fold.standardizer;
    SetRange(artifact, fold.train.x);
    artifact.head = data.head;
    artifact.sian = std::move(result.model);
    WriteJsonFile(dir / "sian.json", artifact.ToJson(), -1);
    AddMetrics(metrics, TaskMetrics(data.head, artifact.Predict(fold.test.x),
                                    fold.test.y));
  }
  WriteJsonFile(out / "sian_metrics.json", SummaryJson(metrics));
  log << "wrote " << (out / "sian_metrics.json").string() << '\n';
  return 0;
}

int Evaluate(const ExperimentConfig& config, const CommandOptions& options,
             std::ostream& log) {
  const fs::path out = OutDir(config, options);
  std::map<std::string, std::vector<double>> metrics;
  auto evaluate = [&](const ModelArtifact& artifact, const Dataset& raw) {
    const Dataset data = artifact.standardizer.Transform(raw);
    AddMetrics(metrics,
               TaskMetrics(artifact.head, artifact.Predict(data.x), data.y));
  };
  if (options.model) {
    const ModelArtifact artifact = LoadArtifact(*options.model);
    if (options.data) {
      CsvSchema schema = config.schema;
      schema.head = artifact.head;
      evaluate(artifact, LoadCsv(RequireFile(*options.data, "data file"), schema));
    } else {
      const Dataset data = LoadData(config);
      SplitPlan plan = config.split;
      plan.seed = SeedOf(config, options);
      evaluate(artifact, data.Rows(MakeSplit(data.num_rows(), plan).test));
    }
  } else {
    const Dataset data = LoadData(config);
    SplitPlan plan = config.split;
    plan.seed = SeedOf(config, options);
    const Split split = MakeSplit(data.num_rows(), plan);
    const Dataset test = data.Rows(split.test);
    for (size_t f = 0; f < split.folds.size(); ++f) {
      evaluate(LoadArtifact(out / ("fold_" + std::to_string(f)) / "sian.json"),
               test);
    }
  }
  const json summary = SummaryJson(metrics);
  WriteJsonFile(out / "evaluate_metrics.json", summary);
  log << summary.dump(2) << '\n';
  return 0;
}

int ExportShapes(const ExperimentConfig& config, const CommandOptions& options,
                 std::ostream& log) {
  const fs::path out = OutDir(config, options);
  const fs::path model_path =
      options.model ? *options.model : out / "fold_0" / "sian.json";
  const ModelArtifact artifact = LoadArtifact(model_path);
  if (artifact.kind != ModelArtifact::Kind::kSian) {
    throw ValidationError("export-shapes needs a SIAN model");
  }
  const SianModel& model = *artifact.sian;
  const size_t d = model.num_features();
  std::vector<double> lo = artifact.feature_min;
  std::vector<double> hi = artifact.feature_max;
  if (config.export_lo) lo.assign(d, *config.export_lo);
  if (config.export_hi) hi.assign(d, *config.export_hi);
  const std::vector<size_t>& kept = artifact.standardizer.kept_features();
  const fs::path dir = out / "shapes";
  fs::create_directories(dir);
  for (const InteractionSet& set : model.architecture().family) {
    const ShapeGrid grid = model.EvalShape(set, DefaultGridAxes(set, lo, hi));
    const fs::path path = dir / ("shape_" + set.ToString() + ".csv");
    std::ofstream csv(path);
    if (!csv) throw ConfigError("cannot write " + path.string());
    csv.precision(17);
    for (size_t i : set.indices()) {
      const size_t raw = i < kept.size() ? kept[i] : i;
      csv << (raw < artifact.feature_names.size() ? artifact.feature_names[raw]
                                                  : "x" + std::to_string(i))
          << ',';
    }
    csv << "value\n";
    std::vector<size_t> counter(grid.axes.size(), 0);
    for (double value : grid.values) {
      for (size_t a = 0; a < grid.axes.size(); ++a) {
        csv << grid.axes[a][counter[a]] << ',';
      }
      csv << value << '\n';
      for (size_t a = grid.axes.size(); a-- > 0;) {
        if (++counter[a] < grid.axes[a].size()) break;
        counter[a] = 0;
      }
    }
    log << "wrote " << path.string() << " (" << grid.values.size()
        << " points)\n";
  }
  return 0;
}

int Oracle(const ExperimentConfig& config, const CommandOptions& options,
           std::ostream& log) {
  OracleOptions oracle;
  oracle.seed = options.seed ? *options.seed : config.seed.value_or(0);
  const OracleReport report = RunOracleSuite(options.suite, oracle);
  for (const OracleCheck& c : report.checks) {
    log << (c.passed ? "PASS " : "FAIL ") << c.name
        << " (max deviation " << c.max_deviation << ", tolerance "
        << c.tolerance << ")\n";
  }
  if (options.out) {
    fs::create_directories(*options.out);
    WriteJsonFile(*options.out / ("oracle_" + options.suite + ".json"),
                  report.ToJson());
  } else {
    log << report.ToJson().dump(2) << '\n';
  }
  return report.failures() == 0 ? 0 : 1;
}

}  // namespace

ExperimentConfig ExperimentConfig::FromJson(const json& doc,
                                            const fs::path& base_dir) {
  CheckKeys(doc, "config",
            {"seed", "data", "dnn", "fis", "sian", "export", "output_dir"});
  ExperimentConfig c;
  if (doc.contains("seed")) {
    uint64_t seed = 0;
    Read(doc, "seed", "config", seed);
    c.seed = seed;
  }
  if (doc.contains("data")) {
    const json& d = doc.at("data");
    CheckKeys(d, "data",
              {"path", "label", "categorical", "ignore", "task",
               "test_fraction", "folds"});
    std::string path;
    Read(d, "path", "data", path);
    if (!path.empty()) c.data_path = base_dir / path;
    Read(d, "label", "data", c.schema.label);
    Read(d, "categorical", "data", c.schema.categorical);
    Read(d, "ignore", "data", c.schema.ignore);
    std::string task = c.schema.head.name();
    Read(d, "task", "data", task);
    try {
      c.schema.head = TaskHead::FromName(task);
    } catch (const Error& e) {
      throw ConfigError(std::string("data.task: ") + e.what());
    }
    Read(d, "test_fraction", "data", c.split.test_fraction);
    Read(d, "folds", "data", c.split.folds);
    c.split.Validate();
  }
  if (doc.contains("dnn")) c.dnn = ReadNetwork(doc.at("dnn"), "dnn", c.dnn);
  if (doc.contains("sian")) {
    c.sian = ReadNetwork(doc.at("sian"), "sian", c.sian);
    std::string mode = ModeName(c.sian_mode);
    Read(doc.at("sian"), "mode", "sian", mode);
    c.sian_mode = ParseMode(mode);
  }
  if (doc.contains("fis")) {
    const json& f = doc.at("fis");
    CheckKeys(f, "fis", {"K", "tau", "theta", "max_samples", "baseline"});
    Read(f, "K", "fis", c.detection.fis.max_order);
    Read(f, "tau", "fis", c.detection.fis.tau);
    if (f.contains("theta")) {
      if (f.at("theta").is_array()) {
        Read(f, "theta", "fis", c.detection.fis.theta);
      } else {
        double theta = 0.0;
        Read(f, "theta", "fis", theta);
        c.detection.fis.theta = {theta};
      }
    }
    Read(f, "max_samples", "fis", c.detection.max_samples);
    Read(f, "baseline", "fis", c.detection.baseline);
    c.detection.fis.Validate();
    if (c.detection.max_samples == 0) {
      throw ConfigError("fis.max_samples must be positive");
    }
  }
  if (doc.contains("export")) {
    const json& e = doc.at("export");
    CheckKeys(e, "export", {"lo", "hi"});
    double lo = 0.0;
    double hi = 0.0;
    Read(e, "lo", "export", lo);
    Read(e, "hi", "export", hi);
    if (e.contains("lo")) c.export_lo = lo;
    if (e.contains("hi")) c.export_hi = hi;
    if (c.export_lo && c.export_hi && !(*c.export_lo < *c.export_hi)) {
      throw ConfigError("export.lo must be below export.hi");
    }
  }
  std::string out;
  Read(doc, "output_dir", "config", out);
  if (!out.empty()) c.output_dir = base_dir / out;
  return c;
}

ExperimentConfig ExperimentConfig::Load(const fs::path& path) {
  RequireFile(path, "config file");
  json doc;
  try {
    doc = ReadJsonFile(path);
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
  return FromJson(doc, path.parent_path());
}

std::vector<double> ModelArtifact::Predict(const Matrix& standardized) const {
  if (kind == Kind::kSian) return sian->Forward(standardized);
  return dnn.Forward(standardized);
}

json StandardizerToJson(const Standardizer& s) {
  return {{"kept", s.kept_features()},
          {"dropped", s.dropped_features()},
          {"mean", s.mean()},
          {"scale", s.scale()},
          {"target_mean", s.target_mean()},
          {"target_scale", s.target_scale()}};
}

Standardizer StandardizerFromJson(const json& doc) {
  try {
    return Standardizer::FromParts(
        doc.at("kept").get<std::vector<size_t>>(),
        doc.at("dropped").get<std::vector<std::string>>(),
        doc.at("mean").get<std::vector<double>>(),
        doc.at("scale").get<std::vector<double>>(),
        doc.at("target_mean").get<double>(), doc.at("target_scale").get<double>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed standardizer: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid standardizer: ") + e.what());
  }
}

json ModelArtifact::ToJson() const {
  json doc{{"format", "sian-artifact"},
           {"version", 1},
           {"kind", kind == Kind::kDnn ? "dnn" : "sian"},
           {"fold", fold},
           {"task", head.name()},
           {"feature_names", feature_names},
           {"feature_min", feature_min},
           {"feature_max", feature_max},
           {"standardizer", StandardizerToJson(standardizer)}};
  doc["model"] = kind == Kind::kDnn ? MlpToJson(dnn) : SianModelToJson(*sian);
  return doc;
}

ModelArtifact ModelArtifact::FromJson(const json& doc) {
  ModelArtifact a;
  try {
    if (doc.at("format").get<std::string>() != "sian-artifact") {
      throw FormatError("not a model artifact");
    }
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind != "dnn" && kind != "sian") {
      throw FormatError("unknown model kind '" + kind + "'");
    }
    a.kind = kind == "dnn" ? Kind::kDnn : Kind::kSian;
    a.fold = doc.at("fold").get<size_t>();
    a.head = TaskHead::FromName(doc.at("task").get<std::string>());
    a.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    a.standardizer = StandardizerFromJson(doc.at("standardizer"));
    a.feature_min = doc.at("feature_min").get<std::vector<double>>();
    a.feature_max = doc.at("feature_max").get<std::vector<double>>();
    if (a.kind == Kind::kDnn) {
      a.dnn = MlpFromJson(doc.at("model"));
    } else {
      a.sian = SianModelFromJson(doc.at("model"));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model artifact: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid model artifact: ") + e.what());
  }
  const size_t inputs = a.kind == Kind::kDnn ? a.dnn.widths().front()
                                             : a.sian->num_features();
  if (inputs != a.standardizer.kept_features().size() ||
      a.feature_min.size() != inputs || a.feature_max.size() != inputs) {
    throw FormatError("model inputs do not match the standardizer");
  }
  return a;
}

int RunCommand(const std::string& command, const ExperimentConfig& config,
               const CommandOptions& options, std::ostream& log) {
  if (command == "train-dnn") return TrainDnn(config, options, log);
  if (command == "fis") return Fis(config, options, log);
  if (command == "train-sian") return TrainSianCommand(config, options, log);
  if (command == "evaluate") return Evaluate(config, options, log);
  if (command == "export-shapes") return ExportShapes(config, options, log);
  if (command == "oracle") return Oracle(config, options, log);
  throw ConfigError("unknown command '" + command + "'");
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DataError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const FormatError*>(&e) ||
      dynamic_cast<const LookupError*>(&e) ||
      dynamic_cast<const ShapeError*>(&e) ||
      dynamic_cast<const DomainError*>(&e)) {
    return 2;
  }
  return 1;
}

}  // namespace sian
