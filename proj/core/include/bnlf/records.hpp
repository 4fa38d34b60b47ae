#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnlf/issues.hpp"
#include "bnlf/sentiment.hpp"

namespace bnlf {

struct ModelPrediction {
  Sentiment label = Sentiment::Neutral;
  std::optional<Probs> probs;

  friend bool operator==(const ModelPrediction&, const ModelPrediction&) = default;
};

/// One text instance with its gold label and each model's prediction.
struct PredictionRecord {
  std::string id;
  std::string corpus;
  std::optional<std::string> text;
  Sentiment gold = Sentiment::Neutral;
  std::map<std::string, ModelPrediction> preds;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Maps source-label strings to canonical sentiment. Lookup is
/// case-insensitive; integer labels are looked up by their decimal text.
class LabelMap {
 public:
  /// Canonical names, the 0/1/2 scheme, and bearish/bullish.
  static LabelMap standard();

  LabelMap& add(std::string_view source, Sentiment target);
  std::optional<Sentiment> lookup(std::string_view source) const;
  const std::map<std::string, Sentiment>& entries() const noexcept { return map_; }

 private:
  std::map<std::string, Sentiment> map_;
};

struct ParseResult {
  std::vector<PredictionRecord> records;
  std::vector<Issue> issues;

  std::size_t dropped() const;
  std::size_t count(IssueKind kind) const;
};

/// Line-delimited JSON records:
///   {"id", "corpus", "text"?, "gold", "preds": {"<model>": {"label", "probs"?}}}
/// Per-line problems are reported in the issue list and never abort the parse.
/// Empty-text lines and repeated ids are dropped.
ParseResult parse_records(std::istream& in, const LabelMap& labels = LabelMap::standard());

/// CSV convenience import. Header columns: id, corpus, text (optional), gold,
/// one label column per model named after the model, and optional
/// "<model>.negative", "<model>.neutral", "<model>.positive" probability columns.
ParseResult parse_records_csv(std::istream& in, const LabelMap& labels = LabelMap::standard());

/// Dispatches on the extension: ".csv" is CSV, anything else JSONL. Throws IoError.
ParseResult load_records(const std::filesystem::path& path, const LabelMap& labels = LabelMap::standard());

nlohmann::json record_to_json(const PredictionRecord& r);
std::string records_to_jsonl(std::span<const PredictionRecord> records);

}  // namespace bnlf
