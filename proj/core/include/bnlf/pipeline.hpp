#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnlf/evaluation.hpp"
#include "bnlf/issues.hpp"
#include "bnlf/learning.hpp"
#include "bnlf/network.hpp"
#include "bnlf/records.hpp"
#include "bnlf/split.hpp"

namespace bnlf {

struct BnlfConfig {
  std::vector<std::string> model_names{"finbert", "roberta", "bertweet"};
  SmoothingConfig smoothing{};
  SplitSpec split{};
  /// Empty means: discover from the training partition, canonical order.
  std::vector<std::string> corpus_states;
};

/// Throws EmptyModelList, or InvalidConfig for repeated or reserved names.
void validate_config(const BnlfConfig& cfg);

/// Corpus -> each model, Corpus -> Sentiment, each model -> Sentiment. The
/// Sentiment parents are ordered (Corpus, models...). No model-model arcs.
/// Throws like validate_config, and InvalidConfig when corpus_states is empty.
NetworkSkeleton build_bnlf_structure(const BnlfConfig& cfg);

struct FitResult {
  Network network;
  BnlfConfig config;  // corpus_states resolved
  SplitManifest manifest;
  std::vector<Issue> issues;
  std::size_t train_rows = 0;
};

/// Splits `records`, builds the structure and learns every CPT from the
/// complete training rows (the Corpus root gets the corpus frequencies).
FitResult fit(const BnlfConfig& cfg, std::span<const PredictionRecord> records);

/// Same, on an already chosen training partition.
FitResult fit_training(const BnlfConfig& cfg, std::span<const PredictionRecord> train, SplitManifest manifest);

struct BatchPrediction {
  std::string id;
  std::vector<double> posterior;
  Sentiment label = Sentiment::Negative;
  /// "missing:<model>" per absent model label; "unseen_configuration" when the
  /// full evidence configuration never occurred in training.
  std::vector<std::string> flags;
};

struct BatchResult {
  std::vector<BatchPrediction> predictions;  // input order, failed records omitted
  std::vector<Issue> issues;
};

/// Evidence per record: Corpus plus every configured model label the record
/// has. Missing models are summed out. Records with a corpus unknown to the
/// network are reported as UnknownCorpusState and skipped.
BatchResult predict_batch(const Network& net, std::span<const PredictionRecord> records,
                          std::span<const std::string> model_names);

/// Fitted-model document: the network JSON plus a "config" block.
nlohmann::json fitted_model_to_json(const Network& net, const BnlfConfig& cfg, const std::string& manifest_ref);

struct FittedModel {
  Network network;
  BnlfConfig config;
  std::string manifest_ref;
};

FittedModel fitted_model_from_json(const nlohmann::json& doc);

/// Prediction line: {"id", "corpus", "gold", "preds" (with "bnlf" added),
/// "posterior", "label", "flags"}. The file is itself a valid record stream.
std::string predictions_to_jsonl(std::span<const PredictionRecord> records, const BatchResult& batch);

/// Copies of `records` with preds["bnlf"] set wherever the batch has a
/// prediction for the id.
std::vector<PredictionRecord> attach_predictions(std::span<const PredictionRecord> records, const BatchResult& batch);

/// Fit, predict the test partition and evaluate every source, end to end.
struct PipelineRun {
  FitResult fit;
  BatchResult batch;
  std::vector<PredictionRecord> scored;  // test records with "bnlf" attached
  SourceSet sources;
  EvaluationReport evaluation;
};

PipelineRun run_pipeline(const BnlfConfig& cfg, std::span<const PredictionRecord> records,
                         const EnsembleOptions& ensemble);

}  // namespace bnlf
