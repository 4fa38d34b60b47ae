#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnlf/issues.hpp"
#include "bnlf/learning.hpp"
#include "bnlf/records.hpp"
#include "bnlf/table.hpp"

namespace bnlf {

struct ClassCounts {
  std::array<std::uint64_t, kSentimentCount> counts{};

  std::uint64_t total() const noexcept { return counts[0] + counts[1] + counts[2]; }
  /// Percentages of total; all zero when empty.
  std::array<double, kSentimentCount> percentages() const noexcept;
};

struct DatasetStats {
  std::vector<std::pair<std::string, ClassCounts>> corpora;  // canonical corpus order
  ClassCounts total;
};

/// Gold-label counts per corpus plus the overall row.
DatasetStats validate_dataset_stats(std::span<const PredictionRecord> records);

nlohmann::json stats_to_json(const DatasetStats& stats);
/// "Dataset | Negative | Neutral | Positive" with "count (pct%)" cells.
TextTable stats_table(const DatasetStats& stats);

struct TrainingTableResult {
  TrainingTable table;
  std::vector<Issue> issues;  // records excluded for missing predictions
};

/// Columns: Corpus, each model in order, Sentiment (the gold label). Records
/// lacking any named model's prediction are excluded and reported.
TrainingTableResult to_training_table(std::span<const PredictionRecord> records,
                                      std::span<const std::string> model_names);

}  // namespace bnlf
