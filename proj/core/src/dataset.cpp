#include "bnlf/dataset.hpp"

#include <map>

namespace bnlf {

std::array<double, kSentimentCount> ClassCounts::percentages() const noexcept {
  std::array<double, kSentimentCount> out{};
  const auto n = total();
  if (n == 0) return out;
  for (std::size_t i = 0; i < kSentimentCount; ++i)
    out[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(n);
  return out;
}

DatasetStats validate_dataset_stats(std::span<const PredictionRecord> records) {
  std::map<std::string, ClassCounts> by_corpus;
  DatasetStats stats;
  for (const auto& r : records) {
    ++by_corpus[r.corpus].counts[index(r.gold)];
    ++stats.total.counts[index(r.gold)];
  }
  std::vector<std::string> tags;
  for (const auto& [tag, _] : by_corpus) tags.push_back(tag);
  for (const auto& tag : order_corpora(tags)) stats.corpora.emplace_back(tag, by_corpus[tag]);
  return stats;
}

namespace {

nlohmann::json counts_json(const ClassCounts& c) {
  nlohmann::json j = nlohmann::json::object();
  const auto pct = c.percentages();
  for (auto s : kSentiments)
    j[std::string(to_string(s))] = {{"count", c.counts[index(s)]}, {"percent", pct[index(s)]}};
  j["total"] = c.total();
  return j;
}

std::string cell(std::uint64_t count, double pct) {
  std::string digits = std::to_string(count);
  std::string grouped;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) grouped += ',';
    grouped += digits[i];
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.2f%%)", pct);
  return grouped + buf;
}

}  // namespace

nlohmann::json stats_to_json(const DatasetStats& stats) {
  nlohmann::json corpora = nlohmann::json::array();
  for (const auto& [tag, c] : stats.corpora) {
    auto j = counts_json(c);
    j["corpus"] = tag;
    corpora.push_back(std::move(j));
  }
  return {{"corpora", std::move(corpora)}, {"total", counts_json(stats.total)}};
}

TextTable stats_table(const DatasetStats& stats) {
  TextTable t({"Dataset", "Negative", "Neutral", "Positive"});
  auto add = [&](const std::string& name, const ClassCounts& c) {
    const auto pct = c.percentages();
    t.add_row({name, cell(c.counts[0], pct[0]), cell(c.counts[1], pct[1]), cell(c.counts[2], pct[2])});
  };
  for (const auto& [tag, c] : stats.corpora) add(tag, c);
  add("Total", stats.total);
  return t;
}

TrainingTableResult to_training_table(std::span<const PredictionRecord> records,
                                      std::span<const std::string> model_names) {
  TrainingTableResult out;
  out.table.columns.emplace_back(kCorpusNode);
  out.table.columns.insert(out.table.columns.end(), model_names.begin(), model_names.end());
  out.table.columns.emplace_back(kSentimentNode);

  for (const auto& r : records) {
    std::vector<std::string> row{r.corpus};
    std::string missing;
    for (const auto& m : model_names) {
      auto it = r.preds.find(m);
      if (it == r.preds.end()) {
        missing += missing.empty() ? m : ", " + m;
        continue;
      }
      row.emplace_back(to_string(it->second.label));
    }
    if (!missing.empty()) {
      out.issues.push_back({IssueKind::MissingModelPrediction, 0, r.id, "no prediction from " + missing, true});
      continue;
    }
    row.emplace_back(to_string(r.gold));
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace bnlf
