#include "bnlf/evaluation.hpp"

#include <algorithm>
#include <set>

#include "bnlf/error.hpp"

namespace bnlf {

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& row : counts)
    for (auto c : row) n += c;
  return n;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) noexcept {
  for (std::size_t g = 0; g < kSentimentCount; ++g)
    for (std::size_t p = 0; p < kSentimentCount; ++p) counts[g][p] += other.counts[g][p];
  return *this;
}

namespace {

void check_pair(std::span<const Sentiment> a, std::span<const Sentiment> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LengthMismatch,
                "label vectors have lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "label vectors are empty");
}

}  // namespace

ConfusionMatrix confusion(std::span<const Sentiment> gold, std::span<const Sentiment> pred) {
  check_pair(gold, pred);
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) cm.add(gold[i], pred[i]);
  return cm;
}

bool Metrics::flagged() const noexcept {
  return std::any_of(per_class.begin(), per_class.end(), [](const ClassMetrics& c) {
    return c.precision_undefined || c.recall_undefined || c.f1_undefined;
  });
}

Metrics metrics(const ConfusionMatrix& cm) {
  Metrics m;
  m.total = cm.total();
  if (m.total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix is empty");
  const double n = static_cast<double>(m.total);

  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < kSentimentCount; ++c) {
    const std::uint64_t tp = cm.counts[c][c];
    std::uint64_t predicted = 0;
    std::uint64_t actual = 0;
    for (std::size_t k = 0; k < kSentimentCount; ++k) {
      predicted += cm.counts[k][c];
      actual += cm.counts[c][k];
    }
    trace += tp;

    auto& cls = m.per_class[c];
    cls.support = actual;
    if (predicted == 0) cls.precision_undefined = true;
    else cls.precision = static_cast<double>(tp) / static_cast<double>(predicted);
    if (actual == 0) cls.recall_undefined = true;
    else cls.recall = static_cast<double>(tp) / static_cast<double>(actual);
    if (cls.precision + cls.recall == 0.0) cls.f1_undefined = true;
    else cls.f1 = 2.0 * cls.precision * cls.recall / (cls.precision + cls.recall);

    m.macro_f1 += cls.f1;
    m.weighted_f1 += static_cast<double>(actual) * cls.f1;
  }
  m.accuracy = static_cast<double>(trace) / n;
  m.macro_f1 /= static_cast<double>(kSentimentCount);
  m.weighted_f1 /= n;
  return m;
}

double pairwise_agreement(std::span<const Sentiment> a, std::span<const Sentiment> b) {
  check_pair(a, b);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

double cohen_kappa(std::span<const Sentiment> a, std::span<const Sentiment> b) {
  check_pair(a, b);
  const double n = static_cast<double>(a.size());
  std::array<double, kSentimentCount> ma{}, mb{};
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[index(a[i])] += 1.0;
    mb[index(b[i])] += 1.0;
    same += a[i] == b[i];
  }
  const double po = static_cast<double>(same) / n;
  double pe = 0.0;
  for (std::size_t c = 0; c < kSentimentCount; ++c) pe += (ma[c] / n) * (mb[c] / n);
  if (po == 1.0) return 1.0;
  if (pe >= 1.0) throw Error(ErrorCode::DegenerateMarginals, "chance agreement is 1 but observed agreement is not");
  return (po - pe) / (1.0 - pe);
}

Sentiment majority_vote(const std::map<std::string, Sentiment>& preds, std::string_view fallback_model) {
  const auto fb = preds.find(std::string(fallback_model));
  if (fb == preds.end())
    throw Error(ErrorCode::MissingFallbackPrediction, "no prediction from fallback model '" + std::string(fallback_model) + "'");
  std::array<std::size_t, kSentimentCount> votes{};
  for (const auto& [_, label] : preds) ++votes[index(label)];
  const std::size_t best = static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  const bool unique = std::count(votes.begin(), votes.end(), votes[best]) == 1;
  if (votes[best] >= 2 && unique) return sentiment_at(best);
  return fb->second;
}

AverageResult probability_average(std::span<const Probs> preds) {
  if (preds.empty()) throw Error(ErrorCode::MissingProbabilities, "no probability vectors to average");
  AverageResult out;
  for (const auto& p : preds)
    for (std::size_t c = 0; c < kSentimentCount; ++c) out.mean[c] += p[c];
  for (double& v : out.mean) v /= static_cast<double>(preds.size());
  std::size_t best = 0;
  for (std::size_t c = 1; c < kSentimentCount; ++c)
    if (out.mean[c] > out.mean[best]) best = c;
  out.label = sentiment_at(best);
  return out;
}

SourceSet sources_from_records(std::span<const PredictionRecord> records, const EnsembleOptions& opts) {
  SourceSet out;

  std::set<std::string> keys;
  for (const auto& r : records)
    for (const auto& [model, _] : r.preds) keys.insert(model);
  std::vector<std::string> order;
  for (const auto& m : opts.models)
    if (keys.count(m)) order.push_back(m);
  for (const auto& k : keys)
    if (k != "bnlf" && std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);

  for (const auto& name : order) {
    LabeledSource src{name, {}};
    for (const auto& r : records)
      if (auto it = r.preds.find(name); it != r.preds.end()) src.labels.emplace(r.id, it->second.label);
    out.sources.push_back(std::move(src));
  }

  if (!opts.models.empty()) {
    LabeledSource majority{"majority", {}};
    LabeledSource averaging{"averaging", {}};
    for (const auto& r : records) {
      std::map<std::string, Sentiment> labels;
      std::vector<Probs> probs;
      bool all_probs = true;
      for (const auto& m : opts.models) {
        auto it = r.preds.find(m);
        if (it == r.preds.end()) {
          all_probs = false;
          continue;
        }
        labels.emplace(m, it->second.label);
        if (it->second.probs) probs.push_back(*it->second.probs);
        else all_probs = false;
      }

      if (labels.size() < 2) {
        out.issues.push_back({IssueKind::MissingModelPrediction, 0, r.id, "fewer than two models for majority vote", true});
      } else {
        try {
          majority.labels.emplace(r.id, majority_vote(labels, opts.fallback));
        } catch (const Error& e) {
          out.issues.push_back({IssueKind::MissingModelPrediction, 0, r.id, e.what(), true});
        }
      }

      if (all_probs) averaging.labels.emplace(r.id, probability_average(probs).label);
      else out.issues.push_back({IssueKind::MissingProbabilities, 0, r.id, "excluded from averaging baseline", true});
    }
    out.sources.push_back(std::move(majority));
    out.sources.push_back(std::move(averaging));
  }

  if (keys.count("bnlf")) {
    LabeledSource src{"bnlf", {}};
    for (const auto& r : records)
      if (auto it = r.preds.find("bnlf"); it != r.preds.end()) src.labels.emplace(r.id, it->second.label);
    out.sources.push_back(std::move(src));
  }
  return out;
}

EvaluationReport evaluate(std::span<const PredictionRecord> records, std::span<const LabeledSource> sources) {
  EvaluationReport report;

  std::vector<std::string> corpora;
  for (const auto& r : records) corpora.push_back(r.corpus);
  corpora = order_corpora(std::move(corpora));

  for (const auto& src : sources) {
    SourceEvaluation ev{src.name, 0, {}, {}, {}};
    std::map<std::string, ConfusionMatrix> by_corpus;
    for (const auto& r : records) {
      auto it = src.labels.find(r.id);
      if (it == src.labels.end()) {
        ++ev.missing;
        continue;
      }
      ev.confusion.add(r.gold, it->second);
      by_corpus[r.corpus].add(r.gold, it->second);
    }
    if (ev.confusion.total() > 0) ev.overall = metrics(ev.confusion);
    for (const auto& c : corpora)
      if (auto it = by_corpus.find(c); it != by_corpus.end()) ev.per_corpus.emplace_back(c, metrics(it->second));
    report.names.push_back(src.name);
    report.sources.push_back(std::move(ev));
  }

  const std::size_t k = sources.size();
  report.agreement.assign(k, std::vector<std::optional<double>>(k));
  report.kappa.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    report.agreement[i][i] = 1.0;
    report.kappa[i][i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<Sentiment> a, b;
      for (const auto& r : records) {
        auto x = sources[i].labels.find(r.id);
        auto y = sources[j].labels.find(r.id);
        if (x == sources[i].labels.end() || y == sources[j].labels.end()) continue;
        a.push_back(x->second);
        b.push_back(y->second);
      }
      if (a.empty()) continue;
      report.agreement[i][j] = report.agreement[j][i] = pairwise_agreement(a, b);
      try {
        report.kappa[i][j] = report.kappa[j][i] = cohen_kappa(a, b);
      } catch (const Error&) {
      }
    }
  }

  auto mean_off_diagonal = [k](const std::vector<std::vector<std::optional<double>>>& m, std::size_t i) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || !m[i][j]) continue;
      sum += *m[i][j];
      ++n;
    }
    return n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt;
  };
  for (std::size_t i = 0; i < k; ++i) {
    report.mean_agreement.push_back(mean_off_diagonal(report.agreement, i));
    report.mean_kappa.push_back(mean_off_diagonal(report.kappa, i));
  }
  return report;
}

namespace {

nlohmann::json metrics_json(const Metrics& m) {
  nlohmann::json classes = nlohmann::json::object();
  for (auto s : kSentiments) {
    const auto& c = m.per_class[index(s)];
    nlohmann::json cj = {{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}};
    nlohmann::json flags = nlohmann::json::array();
    if (c.precision_undefined) flags.push_back("precision_undefined");
    if (c.recall_undefined) flags.push_back("recall_undefined");
    if (c.f1_undefined) flags.push_back("f1_undefined");
    cj["flags"] = std::move(flags);
    classes[std::string(to_string(s))] = std::move(cj);
  }
  return {{"n", m.total},
          {"accuracy", m.accuracy},
          {"macro_f1", m.macro_f1},
          {"weighted_f1", m.weighted_f1},
          {"per_class", std::move(classes)}};
}

nlohmann::json matrix_json(const std::vector<std::vector<std::optional<double>>>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    out.push_back(std::move(r));
  }
  return out;
}

std::string opt4(const std::optional<double>& v) { return v ? fixed4(*v) : "n/a"; }

}  // namespace

nlohmann::json evaluation_to_json(const EvaluationReport& report) {
  nlohmann::json sources = nlohmann::json::array();
  for (const auto& s : report.sources) {
    nlohmann::json j = {{"name", s.name}, {"missing", s.missing}};
    nlohmann::json cm = nlohmann::json::array();
    for (const auto& row : s.confusion.counts) cm.push_back(row);
    j["confusion"] = std::move(cm);
    j["overall"] = s.confusion.total() > 0 ? metrics_json(s.overall) : nlohmann::json(nullptr);
    nlohmann::json pc = nlohmann::json::array();
    for (const auto& [corpus, m] : s.per_corpus) {
      auto mj = metrics_json(m);
      mj["corpus"] = corpus;
      pc.push_back(std::move(mj));
    }
    j["per_corpus"] = std::move(pc);
    sources.push_back(std::move(j));
  }
  nlohmann::json mean_a = nlohmann::json::array(), mean_k = nlohmann::json::array();
  for (std::size_t i = 0; i < report.names.size(); ++i) {
    mean_a.push_back(report.mean_agreement[i] ? nlohmann::json(*report.mean_agreement[i]) : nlohmann::json(nullptr));
    mean_k.push_back(report.mean_kappa[i] ? nlohmann::json(*report.mean_kappa[i]) : nlohmann::json(nullptr));
  }
  return {{"sources", std::move(sources)},
          {"names", report.names},
          {"agreement_matrix", matrix_json(report.agreement)},
          {"kappa_matrix", matrix_json(report.kappa)},
          {"mean_agreement", std::move(mean_a)},
          {"mean_kappa", std::move(mean_k)}};
}

std::vector<std::pair<std::string, TextTable>> evaluation_tables(const EvaluationReport& report) {
  TextTable overall({"Model", "N", "Accuracy", "Macro-F1", "Weighted-F1"});
  TextTable per_corpus({"Corpus", "Model", "N", "Accuracy", "Macro-F1", "Weighted-F1"});
  TextTable per_class({"Model", "Class", "Precision", "Recall", "F1", "Support", "Flags"});

  std::vector<std::string> corpora;
  for (const auto& s : report.sources)
    for (const auto& [c, _] : s.per_corpus) corpora.push_back(c);
  corpora = order_corpora(std::move(corpora));

  for (const auto& s : report.sources) {
    if (s.confusion.total() == 0) {
      overall.add_row({s.name, "0", "n/a", "n/a", "n/a"});
      continue;
    }
    const auto& m = s.overall;
    overall.add_row({s.name, std::to_string(m.total), fixed4(m.accuracy), fixed4(m.macro_f1), fixed4(m.weighted_f1)});
    for (auto c : kSentiments) {
      const auto& cm = m.per_class[index(c)];
      std::string flags;
      if (cm.precision_undefined) flags += "P";
      if (cm.recall_undefined) flags += "R";
      if (cm.f1_undefined) flags += "F";
      per_class.add_row({s.name, std::string(to_string(c)), fixed4(cm.precision), fixed4(cm.recall), fixed4(cm.f1),
                         std::to_string(cm.support), flags});
    }
  }
  for (const auto& corpus : corpora) {
    for (const auto& s : report.sources) {
      for (const auto& [c, m] : s.per_corpus) {
        if (c != corpus) continue;
        per_corpus.add_row(
            {c, s.name, std::to_string(m.total), fixed4(m.accuracy), fixed4(m.macro_f1), fixed4(m.weighted_f1)});
      }
    }
  }

  std::vector<std::string> header{"Model"};
  header.insert(header.end(), report.names.begin(), report.names.end());
  header.push_back("Mean");
  TextTable agreement(header);
  for (std::size_t i = 0; i < report.names.size(); ++i) {
    std::vector<std::string> row{report.names[i]};
    for (std::size_t j = 0; j < report.names.size(); ++j)
      row.push_back(opt4(report.agreement[i][j]) + " (" + opt4(report.kappa[i][j]) + ")");
    row.push_back(opt4(report.mean_agreement[i]) + " (" + opt4(report.mean_kappa[i]) + ")");
    agreement.add_row(std::move(row));
  }

  return {{"overall", std::move(overall)},
          {"per_corpus", std::move(per_corpus)},
          {"per_class", std::move(per_class)},
          {"agreement", std::move(agreement)}};
}

}  // namespace bnlf
