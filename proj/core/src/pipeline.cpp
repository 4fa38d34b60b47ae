#include "bnlf/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bnlf/dataset.hpp"
#include "bnlf/error.hpp"
#include "bnlf/inference.hpp"
#include "bnlf/serialize.hpp"

namespace bnlf {

void validate_config(const BnlfConfig& cfg) {
  if (cfg.model_names.empty()) throw Error(ErrorCode::EmptyModelList, "at least one model is required");
  std::set<std::string> seen;
  for (const auto& m : cfg.model_names) {
    if (m.empty() || m == kCorpusNode || m == kSentimentNode || m == "bnlf")
      throw Error(ErrorCode::InvalidConfig, "'" + m + "' cannot be used as a model name");
    if (!seen.insert(m).second) throw Error(ErrorCode::InvalidConfig, "model '" + m + "' listed twice");
  }
}

NetworkSkeleton build_bnlf_structure(const BnlfConfig& cfg) {
  validate_config(cfg);
  if (cfg.corpus_states.empty()) throw Error(ErrorCode::InvalidConfig, "no corpus states");

  const std::string corpus(kCorpusNode);
  const std::string sentiment(kSentimentNode);
  std::vector<StateSpace> nodes{{corpus, cfg.corpus_states}};
  for (const auto& m : cfg.model_names) nodes.push_back({m, sentiment_state_names()});
  nodes.push_back({sentiment, sentiment_state_names()});

  std::vector<Arc> arcs;
  for (const auto& m : cfg.model_names) arcs.push_back({corpus, m});
  arcs.push_back({corpus, sentiment});
  for (const auto& m : cfg.model_names) arcs.push_back({m, sentiment});
  return NetworkSkeleton::build(std::move(nodes), std::move(arcs));
}

FitResult fit_training(const BnlfConfig& cfg, std::span<const PredictionRecord> train, SplitManifest manifest) {
  validate_config(cfg);
  BnlfConfig resolved = cfg;
  std::vector<Issue> issues;

  std::vector<PredictionRecord> usable;
  if (resolved.corpus_states.empty()) {
    std::vector<std::string> tags;
    for (const auto& r : train) tags.push_back(r.corpus);
    resolved.corpus_states = order_corpora(std::move(tags));
    usable.assign(train.begin(), train.end());
  } else {
    const std::set<std::string> declared(resolved.corpus_states.begin(), resolved.corpus_states.end());
    for (const auto& r : train) {
      if (declared.count(r.corpus)) usable.push_back(r);
      else issues.push_back({IssueKind::UnknownCorpusState, 0, r.id, "corpus '" + r.corpus + "' is not declared", true});
    }
  }
  if (resolved.corpus_states.size() == 1) {
    resolved.corpus_states.push_back("other");
  }

  const auto structure = build_bnlf_structure(resolved);
  auto table = to_training_table(usable, resolved.model_names);
  issues.insert(issues.end(), table.issues.begin(), table.issues.end());
  const std::size_t rows = table.table.rows.size();
  Network net = fit_cpts(structure, table.table, resolved.smoothing);
  return FitResult{std::move(net), std::move(resolved), std::move(manifest), std::move(issues), rows};
}

FitResult fit(const BnlfConfig& cfg, std::span<const PredictionRecord> records) {
  validate_config(cfg);
  auto parts = split(records, cfg.split);
  return fit_training(cfg, parts.train, std::move(parts.manifest));
}

BatchResult predict_batch(const Network& net, std::span<const PredictionRecord> records,
                          std::span<const std::string> model_names) {
  BatchResult out;
  const std::size_t corpus_node = net.index_of(kCorpusNode);
  const std::size_t sentiment_node = net.index_of(kSentimentNode);
  const auto& corpus_states = net.nodes()[corpus_node].states;
  const Cpt& sentiment_cpt = net.cpt(sentiment_node);

  for (const auto& r : records) {
    if (std::find(corpus_states.begin(), corpus_states.end(), r.corpus) == corpus_states.end()) {
      out.issues.push_back({IssueKind::UnknownCorpusState, 0, r.id, "corpus '" + r.corpus + "' absent from training", true});
      continue;
    }
    Assignment evidence;
    evidence.set(std::string(kCorpusNode), r.corpus);
    BatchPrediction pred{r.id, {}, Sentiment::Negative, {}};
    for (const auto& m : model_names) {
      auto it = r.preds.find(m);
      if (it == r.preds.end()) pred.flags.push_back("missing:" + m);
      else evidence.set(m, std::string(to_string(it->second.label)));
    }

    try {
      auto post = posterior(net, kSentimentNode, evidence);
      pred.posterior = std::move(post.distribution);
    } catch (const Error& e) {
      out.issues.push_back({IssueKind::InconsistentEvidence, 0, r.id, e.what(), true});
      continue;
    }
    pred.label = sentiment_at(argmax_first(pred.posterior));

    if (pred.flags.empty() && !sentiment_cpt.counts.empty()) {
      const auto states = net.structure().resolve(evidence);
      const auto& counts = sentiment_cpt.counts[net.row_index(sentiment_node, states)];
      if (std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 0; }))
        pred.flags.push_back("unseen_configuration");
    }
    out.predictions.push_back(std::move(pred));
  }
  return out;
}

nlohmann::json fitted_model_to_json(const Network& net, const BnlfConfig& cfg, const std::string& manifest_ref) {
  auto doc = network_to_json(net);
  doc["config"] = {
      {"model_names", cfg.model_names},
      {"alpha", cfg.smoothing.value},
      {"smoothing", cfg.smoothing.mode == SmoothingConfig::Mode::PseudoCount ? "pseudo_count" : "equivalent_sample_size"},
      {"corpus_states", cfg.corpus_states},
      {"split", {{"seed", cfg.split.seed}, {"fraction", cfg.split.train_fraction}, {"stratified", cfg.split.stratified}}},
      {"manifest", manifest_ref},
  };
  return doc;
}

FittedModel fitted_model_from_json(const nlohmann::json& doc) {
  Network net = network_from_json(doc);
  if (!doc.contains("config")) throw Error(ErrorCode::ParseError, "model file has no 'config' block");
  const auto& c = doc.at("config");
  BnlfConfig cfg;
  std::string manifest_ref;
  try {
    cfg.model_names = c.at("model_names").get<std::vector<std::string>>();
    cfg.smoothing.value = c.at("alpha").get<double>();
    if (c.value("smoothing", std::string("pseudo_count")) == "equivalent_sample_size")
      cfg.smoothing.mode = SmoothingConfig::Mode::EquivalentSampleSize;
    cfg.corpus_states = c.at("corpus_states").get<std::vector<std::string>>();
    if (c.contains("split")) {
      const auto& s = c.at("split");
      cfg.split.seed = s.value("seed", std::uint64_t{0});
      cfg.split.train_fraction = s.value("fraction", 0.8);
      cfg.split.stratified = s.value("stratified", false);
    }
    manifest_ref = c.value("manifest", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("model config: ") + e.what());
  }
  validate_config(cfg);
  net.index_of(kCorpusNode);
  net.index_of(kSentimentNode);
  for (const auto& m : cfg.model_names) net.index_of(m);
  return FittedModel{std::move(net), std::move(cfg), std::move(manifest_ref)};
}

namespace {

std::map<std::string, const BatchPrediction*> by_id(const BatchResult& batch) {
  std::map<std::string, const BatchPrediction*> out;
  for (const auto& p : batch.predictions) out.emplace(p.id, &p);
  return out;
}

ModelPrediction as_model_prediction(const BatchPrediction& p) {
  ModelPrediction mp{p.label, std::nullopt};
  if (p.posterior.size() == kSentimentCount) mp.probs = Probs{p.posterior[0], p.posterior[1], p.posterior[2]};
  return mp;
}

}  // namespace

std::vector<PredictionRecord> attach_predictions(std::span<const PredictionRecord> records, const BatchResult& batch) {
  const auto index = by_id(batch);
  std::vector<PredictionRecord> out(records.begin(), records.end());
  for (auto& r : out)
    if (auto it = index.find(r.id); it != index.end()) r.preds.insert_or_assign("bnlf", as_model_prediction(*it->second));
  return out;
}

std::string predictions_to_jsonl(std::span<const PredictionRecord> records, const BatchResult& batch) {
  const auto index = by_id(batch);
  std::string out;
  for (const auto& r : records) {
    auto it = index.find(r.id);
    if (it == index.end()) continue;
    const BatchPrediction& p = *it->second;
    PredictionRecord copy = r;
    copy.text.reset();
    copy.preds.insert_or_assign("bnlf", as_model_prediction(p));
    auto j = record_to_json(copy);
    j["posterior"] = p.posterior;
    j["label"] = to_string(p.label);
    j["flags"] = p.flags;
    out += j.dump() + "\n";
  }
  return out;
}

PipelineRun run_pipeline(const BnlfConfig& cfg, std::span<const PredictionRecord> records,
                         const EnsembleOptions& ensemble) {
  validate_config(cfg);
  auto parts = split(records, cfg.split);
  auto fitted = fit_training(cfg, parts.train, parts.manifest);
  auto batch = predict_batch(fitted.network, parts.test, fitted.config.model_names);
  auto scored = attach_predictions(parts.test, batch);
  auto sources = sources_from_records(scored, ensemble);
  auto evaluation = evaluate(scored, sources.sources);
  return PipelineRun{std::move(fitted), std::move(batch), std::move(scored), std::move(sources), std::move(evaluation)};
}

}  // namespace bnlf
