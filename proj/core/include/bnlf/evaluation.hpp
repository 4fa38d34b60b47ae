#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnlf/issues.hpp"
#include "bnlf/records.hpp"
#include "bnlf/sentiment.hpp"
#include "bnlf/table.hpp"

namespace bnlf {

/// counts[gold][predicted], canonical order.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kSentimentCount>, kSentimentCount> counts{};

  void add(Sentiment gold, Sentiment pred) { ++counts[index(gold)][index(pred)]; }
  std::uint64_t total() const noexcept;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other) noexcept;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws LengthMismatch or EmptyInput.
ConfusionMatrix confusion(std::span<const Sentiment> gold, std::span<const Sentiment> pred);

/// Zero denominators give 0 and raise the matching flag.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

struct Metrics {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  std::array<ClassMetrics, kSentimentCount> per_class{};
  std::uint64_t total = 0;

  bool flagged() const noexcept;
};

/// Throws EmptyMatrix.
Metrics metrics(const ConfusionMatrix& cm);

/// Fraction of positions with equal labels. Throws LengthMismatch / EmptyInput.
double pairwise_agreement(std::span<const Sentiment> a, std::span<const Sentiment> b);

/// (p_o - p_e) / (1 - p_e). Returns 1 when both agreements are 1; throws
/// DegenerateMarginals when p_e = 1 but p_o < 1, plus LengthMismatch / EmptyInput.
double cohen_kappa(std::span<const Sentiment> a, std::span<const Sentiment> b);

/// Label held by at least two models and strictly more than any other label;
/// otherwise the fallback model's label. Throws MissingFallbackPrediction.
Sentiment majority_vote(const std::map<std::string, Sentiment>& preds, std::string_view fallback_model);

struct AverageResult {
  Probs mean{};
  Sentiment label = Sentiment::Negative;
};

/// Class-wise arithmetic mean, first maximal class. Throws MissingProbabilities
/// for an empty input.
AverageResult probability_average(std::span<const Probs> preds);

/// A column of predicted labels keyed by record id.
struct LabeledSource {
  std::string name;
  std::map<std::string, Sentiment> labels;
};

struct EnsembleOptions {
  std::vector<std::string> models{"finbert", "roberta", "bertweet"};
  std::string fallback = "finbert";
};

struct SourceSet {
  std::vector<LabeledSource> sources;
  std::vector<Issue> issues;
};

/// One source per model key found in the records (ensemble models first, then
/// others sorted, "bnlf" last), plus "majority" and "averaging" over the
/// ensemble models. Records the baselines cannot handle are excluded from that
/// baseline and reported.
SourceSet sources_from_records(std::span<const PredictionRecord> records, const EnsembleOptions& opts);

struct SourceEvaluation {
  std::string name;
  std::uint64_t missing = 0;  // records without a label from this source
  ConfusionMatrix confusion;
  Metrics overall;
  std::vector<std::pair<std::string, Metrics>> per_corpus;
};

struct EvaluationReport {
  std::vector<SourceEvaluation> sources;
  std::vector<std::string> names;
  /// Symmetric, unit diagonal; empty optional when the pair shares no record
  /// (agreement) or kappa is undefined.
  std::vector<std::vector<std::optional<double>>> agreement;
  std::vector<std::vector<std::optional<double>>> kappa;
  /// Mean over the other sources, excluding self.
  std::vector<std::optional<double>> mean_agreement;
  std::vector<std::optional<double>> mean_kappa;
};

/// Scores every source against the gold labels of `records`.
EvaluationReport evaluate(std::span<const PredictionRecord> records, std::span<const LabeledSource> sources);

nlohmann::json evaluation_to_json(const EvaluationReport& report);

/// Named tables: "overall", "per_corpus", "per_class", "agreement".
std::vector<std::pair<std::string, TextTable>> evaluation_tables(const EvaluationReport& report);

}  // namespace bnlf
